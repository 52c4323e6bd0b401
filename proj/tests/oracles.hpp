#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coalg/coalgebra.hpp"
#include "coalg/instances.hpp"

// Independent oracles.  Everything here recomputes expected results along a
// different algorithmic route than the library and must stay that way.

namespace coalg::oracle {

// Three-color DFS cycle detection on an adjacency list.
bool has_cycle(const std::vector<std::vector<StateId>>& adj);

// Longest-path length (height) per state of an acyclic adjacency list.
std::vector<std::uint32_t> dag_heights(const std::vector<std::vector<StateId>>& adj);

// Least fixpoint of next-time by brute force over all 2^n subsets: the
// intersection of every S with next_time(S) <= S.  Requires n <= 20ish.
std::uint64_t brute_force_lfp_mask(const Coalgebra& c);

// ── Moore ───────────────────────────────────────────────────────────────────

// Worklist (Hopcroft-style) minimization over the reachable part; returns the
// minimized machine with blocks numbered by first reachable occurrence.
MooreMachine hopcroft_minimize(const MooreMachine& m);

// Canonical key of a reachable machine: BFS renumbering from the initial
// state over inputs in declared order, then the flattened tables.
std::string machine_key(const MooreMachine& m);

// Exact behavior equivalence via product-machine reachability.
bool machines_equivalent(const MooreMachine& a, const MooreMachine& b);

// ── streams ─────────────────────────────────────────────────────────────────

// Minimal (u', v') with u'v'^w = uv^w found by brute force over all
// decompositions with |u'| + |v'| <= |u| + |v|.
std::pair<std::string, std::string> minimal_lasso(const std::string& u, const std::string& v);

// ── binary trees ────────────────────────────────────────────────────────────

struct BinTree {
    bool leaf = true;
    std::vector<BinTree> children;  // two entries when not a leaf
    bool operator==(const BinTree& o) const;
};

// All distinct binary trees of depth <= d.
std::vector<BinTree> all_binary_trees(std::uint32_t depth);

// Number of distinct subtrees (including the tree itself).
std::size_t distinct_subtree_count(const BinTree& t);

// How many finite binary trees have at most k distinct subtrees.  (Any such
// tree has depth <= k, so searching depth <= k is exhaustive.)
std::size_t count_trees_with_subtree_bound(std::uint32_t k);

}  // namespace coalg::oracle
