#include "coalg/instances.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "coalg/errors.hpp"
#include "coalg/rational.hpp"

namespace coalg {

// ── Moore machines ──────────────────────────────────────────────────────────

FunctorExpr moore_functor(const std::vector<std::string>& inputs,
                          const std::vector<std::string>& outputs) {
    return FunctorExpr::prod(FunctorExpr::exp(FunctorExpr::id(), inputs),
                             FunctorExpr::constant(outputs));
}

PointedCoalgebra moore_to_coalgebra(const MooreMachine& m) {
    if (m.inputs.empty() || m.outputs.empty())
        throw DomainError("a Moore machine needs nonempty input and output alphabets");
    std::vector<Term> structure;
    structure.reserve(m.n);
    for (StateId q = 0; q < m.n; ++q) {
        std::vector<Term> row;
        row.reserve(m.inputs.size());
        for (std::size_t i = 0; i < m.inputs.size(); ++i)
            row.push_back(Term::state_ref(m.next[q][i]));
        structure.push_back(Term::pair(Term::tab(std::move(row)), Term::const_val(m.out[q])));
    }
    return PointedCoalgebra::make(Coalgebra::make(moore_functor(m.inputs, m.outputs),
                                                  std::move(structure)),
                                  m.initial);
}

MooreMachine coalgebra_to_moore(const PointedCoalgebra& pc) {
    const FunctorExpr& f = pc.base.functor;
    bool shape_ok = f.kind == FunctorExpr::Kind::Prod &&
                    f.children[0].kind == FunctorExpr::Kind::Exp &&
                    f.children[0].children[0].kind == FunctorExpr::Kind::Id &&
                    f.children[1].kind == FunctorExpr::Kind::Const;
    if (!shape_ok)
        throw FunctorMismatch("expected a Moore functor Id^{I}*{J}, got " + print_functor(f));
    MooreMachine m;
    m.inputs = f.children[0].symbols;
    m.outputs = f.children[1].symbols;
    m.n = pc.base.n;
    m.initial = pc.point;
    m.next.resize(m.n);
    m.out.resize(m.n);
    for (StateId q = 0; q < m.n; ++q) {
        const Term& t = pc.base.structure[q];
        const Term& table = t.children[0];
        for (const Term& entry : table.children) m.next[q].push_back(entry.index);
        m.out[q] = t.children[1].index;
    }
    return m;
}

std::map<std::vector<std::uint32_t>, std::uint32_t> moore_behavior(const MooreMachine& m,
                                                                   std::uint32_t max_len) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> beta;
    // breadth-first over words; the reached state is carried along
    std::vector<std::pair<std::vector<std::uint32_t>, StateId>> frontier;
    frontier.emplace_back(std::vector<std::uint32_t>{}, m.initial);
    beta[{}] = m.out[m.initial];
    for (std::uint32_t len = 0; len < max_len; ++len) {
        std::vector<std::pair<std::vector<std::uint32_t>, StateId>> next_frontier;
        for (const auto& [word, q] : frontier) {
            for (std::uint32_t i = 0; i < m.inputs.size(); ++i) {
                std::vector<std::uint32_t> w = word;
                w.push_back(i);
                StateId r = m.next[q][i];
                beta[w] = m.out[r];
                next_frontier.emplace_back(std::move(w), r);
            }
        }
        frontier = std::move(next_frontier);
    }
    return beta;
}

MooreMachine minimize_moore(const MooreMachine& m) {
    return coalgebra_to_moore(wp(moore_to_coalgebra(m)));
}

// ── streams ─────────────────────────────────────────────────────────────────

StreamSpec StreamSpec::finite(std::string w) {
    StreamSpec s;
    s.prefix = std::move(w);
    return s;
}

StreamSpec StreamSpec::lasso(std::string u, std::string v) {
    if (v.empty()) throw DomainError("a lasso needs a nonempty period");
    StreamSpec s;
    s.is_lasso = true;
    s.prefix = std::move(u);
    s.period = std::move(v);
    return s;
}

bool StreamSpec::operator==(const StreamSpec& o) const {
    return is_lasso == o.is_lasso && prefix == o.prefix && period == o.period;
}

StreamSpec parse_stream(const std::string& literal) {
    auto check_word = [&](const std::string& w, std::size_t offset) {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!std::isalnum(static_cast<unsigned char>(w[i])))
                throw ParseError("stream symbols must be alphanumeric",
                                 static_cast<long>(offset + i));
    };
    auto open = literal.find('(');
    if (open == std::string::npos) {
        check_word(literal, 0);
        return StreamSpec::finite(literal);
    }
    auto close = literal.find(')', open);
    if (close == std::string::npos || literal.substr(close) != ")^w" ||
        close + 3 != literal.size())
        throw ParseError("expected u(v)^w", static_cast<long>(open));
    std::string u = literal.substr(0, open);
    std::string v = literal.substr(open + 1, close - open - 1);
    check_word(u, 0);
    check_word(v, open + 1);
    if (v.empty()) throw ParseError("empty lasso period", static_cast<long>(open + 1));
    return StreamSpec::lasso(u, v);
}

std::string print_stream(const StreamSpec& s) {
    return s.is_lasso ? s.prefix + "(" + s.period + ")^w" : s.prefix;
}

namespace {

FunctorExpr stream_functor(const std::string& word) {
    std::set<char> alpha(word.begin(), word.end());
    std::vector<std::string> syms;
    syms.reserve(alpha.size());
    for (char c : alpha) syms.emplace_back(1, c);
    return FunctorExpr::coprod({FunctorExpr::prod(FunctorExpr::id(),
                                                  FunctorExpr::constant(syms)),
                                FunctorExpr::constant({"end"})});
}

std::uint32_t sym_index(const FunctorExpr& f, char c) {
    const auto& syms = f.children[0].children[1].symbols;
    for (std::uint32_t i = 0; i < syms.size(); ++i)
        if (syms[i][0] == c) return i;
    throw DomainError("symbol not in stream alphabet");
}

}  // namespace

PointedCoalgebra stream_to_coalgebra(const StreamSpec& s) {
    std::string word = s.prefix + s.period;
    FunctorExpr f = stream_functor(word);
    std::uint32_t n = static_cast<std::uint32_t>(word.size()) + (s.is_lasso ? 0 : 1);
    std::vector<Term> structure;
    structure.reserve(n);
    for (std::uint32_t i = 0; i < word.size(); ++i) {
        StateId succ = i + 1 < word.size()
                           ? i + 1
                           : (s.is_lasso ? static_cast<StateId>(s.prefix.size()) : i + 1);
        structure.push_back(Term::inj(
            0, Term::pair(Term::state_ref(succ), Term::const_val(sym_index(f, word[i])))));
    }
    if (!s.is_lasso) structure.push_back(Term::inj(1, Term::const_val(0)));
    return PointedCoalgebra::make(Coalgebra::make(std::move(f), std::move(structure)), 0);
}

namespace {

StreamSpec decode_stream(const PointedCoalgebra& pc) {
    const FunctorExpr& f = pc.base.functor;
    bool shape_ok = f.kind == FunctorExpr::Kind::Coprod && f.children.size() == 2 &&
                    f.children[0].kind == FunctorExpr::Kind::Prod &&
                    f.children[0].children[0].kind == FunctorExpr::Kind::Id &&
                    f.children[0].children[1].kind == FunctorExpr::Kind::Const &&
                    f.children[1].kind == FunctorExpr::Kind::Const &&
                    f.children[1].symbols.size() == 1;
    if (!shape_ok)
        throw DecodeError("not a stream coalgebra: functor " + print_functor(f));
    const auto& alphabet = f.children[0].children[1].symbols;

    std::string seq;
    std::vector<std::uint32_t> seen_at(pc.base.n, static_cast<std::uint32_t>(-1));
    StateId cur = pc.point;
    while (true) {
        const Term& t = pc.base.structure[cur];
        if (t.index == 1) return StreamSpec::finite(seq);  // deadlock summand
        if (seen_at[cur] != static_cast<std::uint32_t>(-1)) {
            std::size_t j = seen_at[cur];
            return StreamSpec::lasso(seq.substr(0, j), seq.substr(j));
        }
        seen_at[cur] = static_cast<std::uint32_t>(seq.size());
        const Term& pair = t.children[0];
        const std::string& sym = alphabet[pair.children[1].index];
        if (sym.size() != 1) throw DecodeError("stream symbols must be single characters");
        seq += sym[0];
        cur = pair.children[0].index;
    }
}

}  // namespace

StreamSpec stream_normalize(const StreamSpec& s) {
    return decode_stream(wp(stream_to_coalgebra(s)));
}

// ── trees ───────────────────────────────────────────────────────────────────

bool Tree::operator==(const Tree& o) const { return compare_trees(*this, o) == 0; }

Tree Tree::cut(std::uint32_t id) {
    Tree t;
    t.kind = Kind::Cut;
    t.index = id;
    return t;
}

Tree Tree::constant(std::string symbol) {
    Tree t;
    t.kind = Kind::Const;
    t.symbol = std::move(symbol);
    return t;
}

Tree Tree::pair(Tree l, Tree r) {
    Tree t;
    t.kind = Kind::Pair;
    t.children.push_back(std::move(l));
    t.children.push_back(std::move(r));
    return t;
}

Tree Tree::inj(std::uint32_t tag, Tree payload) {
    Tree t;
    t.kind = Kind::Inj;
    t.index = tag;
    t.children.push_back(std::move(payload));
    return t;
}

Tree Tree::tab(std::vector<std::string> keys, std::vector<Tree> children) {
    Tree t;
    t.kind = Kind::Tab;
    t.keys = std::move(keys);
    t.children = std::move(children);
    return t;
}

Tree Tree::set_of(std::vector<Tree> elements) {
    Tree t;
    t.kind = Kind::SetOf;
    t.children = std::move(elements);
    std::sort(t.children.begin(), t.children.end(),
              [](const Tree& a, const Tree& b) { return compare_trees(a, b) < 0; });
    t.children.erase(std::unique(t.children.begin(), t.children.end()), t.children.end());
    return t;
}

int compare_trees(const Tree& a, const Tree& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.index != b.index) return a.index < b.index ? -1 : 1;
    if (a.symbol != b.symbol) return a.symbol < b.symbol ? -1 : 1;
    if (a.keys != b.keys) return a.keys < b.keys ? -1 : 1;
    std::size_t common = std::min(a.children.size(), b.children.size());
    for (std::size_t i = 0; i < common; ++i)
        if (int c = compare_trees(a.children[i], b.children[i])) return c;
    if (a.children.size() != b.children.size())
        return a.children.size() < b.children.size() ? -1 : 1;
    return 0;
}

std::string render_tree(const Tree& t) {
    std::ostringstream out;
    std::function<void(const Tree&)> rec = [&](const Tree& node) {
        switch (node.kind) {
            case Tree::Kind::Const:
                out << node.symbol;
                return;
            case Tree::Kind::Cut:
                out << '?';
                if (node.index) out << node.index;
                return;
            case Tree::Kind::Pair:
                out << '(';
                rec(node.children[0]);
                out << ", ";
                rec(node.children[1]);
                out << ')';
                return;
            case Tree::Kind::Inj:
                out << "inj " << node.index << ' ';
                rec(node.children[0]);
                return;
            case Tree::Kind::Tab:
                out << '[';
                for (std::size_t i = 0; i < node.children.size(); ++i) {
                    if (i) out << ", ";
                    out << node.keys[i] << ": ";
                    rec(node.children[i]);
                }
                out << ']';
                return;
            case Tree::Kind::SetOf:
                out << '{';
                for (std::size_t i = 0; i < node.children.size(); ++i) {
                    if (i) out << ", ";
                    rec(node.children[i]);
                }
                out << '}';
                return;
        }
    };
    rec(t);
    return out.str();
}

namespace {

// Substitutes subtrees for the state slots of a structure term.
Tree term_to_tree(const Term& t, const FunctorExpr& f,
                  const std::function<Tree(StateId)>& slot) {
    switch (t.kind) {
        case Term::Kind::ConstVal:
            return Tree::constant(f.symbols[t.index]);
        case Term::Kind::StateRef:
            return slot(t.index);
        case Term::Kind::Pair:
            return Tree::pair(term_to_tree(t.children[0], f.children[0], slot),
                              term_to_tree(t.children[1], f.children[1], slot));
        case Term::Kind::Inj:
            return Tree::inj(t.index, term_to_tree(t.children[0], f.children[t.index], slot));
        case Term::Kind::Tab: {
            std::vector<Tree> children;
            children.reserve(t.children.size());
            for (const auto& c : t.children)
                children.push_back(term_to_tree(c, f.children[0], slot));
            return Tree::tab(f.symbols, std::move(children));
        }
        case Term::Kind::SetOf: {
            std::vector<Tree> children;
            children.reserve(t.children.size());
            for (const auto& c : t.children)
                children.push_back(term_to_tree(c, f.children[0], slot));
            return Tree::set_of(std::move(children));
        }
    }
    throw DomainError("unreachable term kind");
}

}  // namespace

Tree tree_expansion(const PointedCoalgebra& pc, int depth, bool distinct_cuts) {
    const Coalgebra& c = pc.base;
    if (depth < 0) {
        WfReport report = well_founded_part(c);
        // only states reachable from the point need to be well-founded
        ReachablePart rp = reachable_part(pc);
        for (StateId old : rp.embedding.map)
            if (!report.part[old])
                throw FullExpansionDiverges("full expansion diverges: state " +
                                            std::to_string(old) +
                                            " is not well-founded");
        std::vector<Tree> memo(c.n);
        std::vector<StateId> order = rp.embedding.map;
        std::sort(order.begin(), order.end(), [&](StateId a, StateId b) {
            return report.rank[a] < report.rank[b];
        });
        for (StateId x : order)
            memo[x] = term_to_tree(c.structure[x], c.functor,
                                   [&](StateId y) { return memo[y]; });
        return memo[pc.point];
    }

    std::uint32_t cut_counter = 0;
    std::function<Tree(StateId, int)> expand = [&](StateId x, int d) -> Tree {
        return term_to_tree(c.structure[x], c.functor, [&](StateId y) -> Tree {
            if (d > 0) return expand(y, d - 1);
            return Tree::cut(distinct_cuts ? ++cut_counter : 0);
        });
    };
    return expand(pc.point, depth);
}

AlgebraRule<Tree> expansion_algebra(const FunctorExpr& f) {
    return [f](const Term& image, const std::vector<Tree>& args) {
        return term_to_tree(image, f, [&](StateId slot) { return args[slot]; });
    };
}

// ── strong extensionality ───────────────────────────────────────────────────

namespace {

struct FlatTree {
    std::vector<const Tree*> node;
    std::vector<int> parent;
    std::vector<int> depth;
    std::vector<std::vector<int>> children;

    void build(const Tree& t, int parent_id) {
        int id = static_cast<int>(node.size());
        node.push_back(&t);
        parent.push_back(parent_id);
        depth.push_back(parent_id < 0 ? 0 : depth[parent_id] + 1);
        children.emplace_back();
        if (parent_id >= 0) children[parent_id].push_back(id);
        for (const Tree& c : t.children) build(c, id);
    }
};

bool same_shape(const Tree& a, const Tree& b) {
    if (a.kind != b.kind || a.symbol != b.symbol || a.keys != b.keys) return false;
    if (a.kind == Tree::Kind::Cut || a.kind == Tree::Kind::Inj)
        if (a.index != b.index) return false;
    if (a.kind != Tree::Kind::SetOf && a.children.size() != b.children.size()) return false;
    return true;
}

}  // namespace

bool is_strongly_extensional(const Tree& t) {
    FlatTree ft;
    ft.build(t, -1);
    std::size_t v = ft.node.size();

    // greatest tree-bisimulation: start from all same-depth pairs, shrink
    std::vector<std::vector<bool>> rel(v, std::vector<bool>(v, false));
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j) rel[i][j] = ft.depth[i] == ft.depth[j];

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < v; ++i) {
            for (std::size_t j = 0; j < v; ++j) {
                if (!rel[i][j]) continue;
                bool keep = same_shape(*ft.node[i], *ft.node[j]);
                if (keep && ft.parent[i] >= 0 &&
                    !rel[ft.parent[i]][ft.parent[j]])  // same depth: both non-roots
                    keep = false;
                if (keep) {
                    const auto& ci = ft.children[i];
                    const auto& cj = ft.children[j];
                    if (ft.node[i]->kind == Tree::Kind::SetOf) {
                        for (int a : ci) {
                            bool matched = false;
                            for (int b : cj)
                                if (rel[a][b]) {
                                    matched = true;
                                    break;
                                }
                            if (!matched) {
                                keep = false;
                                break;
                            }
                        }
                        if (keep)
                            for (int b : cj) {
                                bool matched = false;
                                for (int a : ci)
                                    if (rel[a][b]) {
                                        matched = true;
                                        break;
                                    }
                                if (!matched) {
                                    keep = false;
                                    break;
                                }
                            }
                    } else {
                        for (std::size_t k = 0; k < ci.size() && keep; ++k)
                            if (!rel[ci[k]][cj[k]]) keep = false;
                    }
                }
                if (!keep) {
                    rel[i][j] = false;
                    changed = true;
                }
            }
        }
    }

    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j)
            if (rel[i][j] && i != j) return false;
    return true;
}

// ── hereditarily finite sets ────────────────────────────────────────────────

HFSet HFSet::make(std::vector<HFSet> elems) {
    HFSet s;
    s.elems = std::move(elems);
    std::sort(s.elems.begin(), s.elems.end(),
              [](const HFSet& a, const HFSet& b) { return compare_hf(a, b) < 0; });
    s.elems.erase(std::unique(s.elems.begin(), s.elems.end()), s.elems.end());
    return s;
}

bool HFSet::operator==(const HFSet& o) const { return compare_hf(*this, o) == 0; }

int compare_hf(const HFSet& a, const HFSet& b) {
    std::size_t common = std::min(a.elems.size(), b.elems.size());
    for (std::size_t i = 0; i < common; ++i)
        if (int c = compare_hf(a.elems[i], b.elems[i])) return c;
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size() ? -1 : 1;
    return 0;
}

namespace {

HFSet parse_hf_rec(const std::string& s, std::size_t& pos) {
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    skip();
    if (pos >= s.size() || s[pos] != '{')
        throw ParseError("expected '{' in set literal", static_cast<long>(pos));
    ++pos;
    std::vector<HFSet> elems;
    skip();
    if (pos < s.size() && s[pos] == '}') {
        ++pos;
        return HFSet::make(std::move(elems));
    }
    while (true) {
        elems.push_back(parse_hf_rec(s, pos));
        skip();
        if (pos < s.size() && s[pos] == ',') {
            ++pos;
            continue;
        }
        if (pos < s.size() && s[pos] == '}') {
            ++pos;
            return HFSet::make(std::move(elems));
        }
        throw ParseError("expected ',' or '}' in set literal", static_cast<long>(pos));
    }
}

}  // namespace

HFSet parse_hf(const std::string& literal) {
    std::size_t pos = 0;
    HFSet s = parse_hf_rec(literal, pos);
    while (pos < literal.size() && std::isspace(static_cast<unsigned char>(literal[pos])))
        ++pos;
    if (pos != literal.size())
        throw ParseError("trailing input after set literal", static_cast<long>(pos));
    return s;
}

std::string print_hf(const HFSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.elems.size(); ++i) {
        if (i) out += ",";
        out += print_hf(s.elems[i]);
    }
    return out + "}";
}

HFSet von_neumann(std::uint32_t k) {
    HFSet s;  // 0 = {}
    for (std::uint32_t i = 0; i < k; ++i) {
        std::vector<HFSet> elems = s.elems;
        elems.push_back(s);
        s = HFSet::make(std::move(elems));
    }
    return s;
}

namespace {

void collect_members(const HFSet& s, std::vector<HFSet>& acc) {
    for (const auto& e : acc)
        if (e == s) return;
    acc.push_back(s);
    for (const auto& child : s.elems) collect_members(child, acc);
}

}  // namespace

PointedCoalgebra canonical_picture(const HFSet& s) {
    std::vector<HFSet> members;
    collect_members(s, members);
    std::sort(members.begin(), members.end(),
              [](const HFSet& a, const HFSet& b) { return compare_hf(a, b) < 0; });
    auto index_of = [&](const HFSet& x) -> StateId {
        auto it = std::lower_bound(members.begin(), members.end(), x,
                                   [](const HFSet& a, const HFSet& b) {
                                       return compare_hf(a, b) < 0;
                                   });
        return static_cast<StateId>(it - members.begin());
    };
    std::vector<Term> structure;
    structure.reserve(members.size());
    for (const auto& mem : members) {
        std::vector<Term> elems;
        elems.reserve(mem.elems.size());
        for (const auto& child : mem.elems) elems.push_back(Term::state_ref(index_of(child)));
        structure.push_back(Term::set_of(std::move(elems)));
    }
    return PointedCoalgebra::make(
        Coalgebra::make(FunctorExpr::pow(FunctorExpr::id()), std::move(structure)),
        index_of(s));
}

HFSet mostowski_collapse(const PointedCoalgebra& pc) {
    if (!(pc.base.functor == FunctorExpr::pow(FunctorExpr::id())))
        throw FunctorMismatch("Mostowski collapse needs a graph coalgebra over P(Id)");
    WfReport report = well_founded_part(pc.base);
    if (!report.is_well_founded) {
        for (StateId x = 0; x < pc.base.n; ++x)
            if (!report.part[x])
                throw NotWellFounded("no decoration: state " + std::to_string(x) +
                                     " lies on a cycle or infinite path");
    }
    std::vector<StateId> order(pc.base.n);
    for (StateId x = 0; x < pc.base.n; ++x) order[x] = x;
    std::sort(order.begin(), order.end(),
              [&](StateId a, StateId b) { return report.rank[a] < report.rank[b]; });
    std::vector<HFSet> d(pc.base.n);
    for (StateId x : order) {
        std::vector<HFSet> elems;
        for (StateId y : support(pc.base.structure[x])) elems.push_back(d[y]);
        d[x] = HFSet::make(std::move(elems));
    }
    return d[pc.point];
}

}  // namespace coalg
