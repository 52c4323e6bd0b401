#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coalg {

// ── FunctorExpr ─────────────────────────────────────────────────────────────
// Syntax tree of the functor grammar
//
//     F ::= Id | {s,...} | F*F | F^{i,...} | P(F) | F+F+... | (F)
//
// Every expressible functor is finitary and preserves wide intersections and
// injections on nonempty carriers, so H(X) is finite for finite X and least
// supports exist.  Constant carriers and exponent index sets are ordered,
// duplicate-free symbol lists; the declared order seeds the canonical term
// order.  Exponent index sets must be nonempty.

struct FunctorExpr {
    enum class Kind : std::uint8_t { Const, Id, Prod, Coprod, Exp, Pow };

    Kind kind = Kind::Id;
    std::vector<std::string> symbols;    // Const carrier / Exp index set
    std::vector<FunctorExpr> children;   // Prod: 2, Coprod: >=2, Exp: 1 (base), Pow: 1

    bool operator==(const FunctorExpr& o) const;

    static FunctorExpr constant(std::vector<std::string> syms);
    static FunctorExpr id();
    static FunctorExpr prod(FunctorExpr l, FunctorExpr r);
    static FunctorExpr coprod(std::vector<FunctorExpr> summands);
    static FunctorExpr exp(FunctorExpr base, std::vector<std::string> index);
    static FunctorExpr pow(FunctorExpr inner);
};

// Parses the grammar above.  `*` binds tighter than `+`, `^{...}` and `P(...)`
// tighter still.  Throws ParseError with a byte position on bad syntax, an
// empty exponent index set, or duplicate symbols in a symbol list.
FunctorExpr parse_functor(const std::string& src);

// Inverse of parse_functor: parse_functor(print_functor(f)) == f.
std::string print_functor(const FunctorExpr& f);

// |H(X)| for |X| = n, computed compositionally.  Returns nullopt when the
// count does not fit into 64 bits.
std::optional<std::uint64_t> count_terms(const FunctorExpr& f, std::uint32_t n);

}  // namespace coalg
