#include "coalg/functor.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <utility>

#include "coalg/errors.hpp"

namespace coalg {

bool FunctorExpr::operator==(const FunctorExpr& o) const {
    return kind == o.kind && symbols == o.symbols && children == o.children;
}

FunctorExpr FunctorExpr::constant(std::vector<std::string> syms) {
    FunctorExpr f;
    f.kind = Kind::Const;
    f.symbols = std::move(syms);
    return f;
}

FunctorExpr FunctorExpr::id() { return FunctorExpr{}; }

FunctorExpr FunctorExpr::prod(FunctorExpr l, FunctorExpr r) {
    FunctorExpr f;
    f.kind = Kind::Prod;
    f.children.push_back(std::move(l));
    f.children.push_back(std::move(r));
    return f;
}

FunctorExpr FunctorExpr::coprod(std::vector<FunctorExpr> summands) {
    FunctorExpr f;
    f.kind = Kind::Coprod;
    f.children = std::move(summands);
    return f;
}

FunctorExpr FunctorExpr::exp(FunctorExpr base, std::vector<std::string> index) {
    FunctorExpr f;
    f.kind = Kind::Exp;
    f.children.push_back(std::move(base));
    f.symbols = std::move(index);
    return f;
}

FunctorExpr FunctorExpr::pow(FunctorExpr inner) {
    FunctorExpr f;
    f.kind = Kind::Pow;
    f.children.push_back(std::move(inner));
    return f;
}

// ── parser ──────────────────────────────────────────────────────────────────

namespace {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!eat(c))
            throw ParseError(std::string("expected '") + c + "' " + what, static_cast<long>(pos));
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    static bool is_sym_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-' ||
               c == '.';
    }

    std::string symbol() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && is_sym_char(src[pos])) ++pos;
        if (pos == start) throw ParseError("expected a symbol name", static_cast<long>(pos));
        return src.substr(start, pos - start);
    }

    // {s,...} — possibly empty, duplicate-free list of symbols
    std::vector<std::string> symbol_list(const char* what) {
        expect('{', what);
        std::vector<std::string> syms;
        if (!eat('}')) {
            syms.push_back(symbol());
            while (eat(',')) syms.push_back(symbol());
            expect('}', "to close symbol list");
        }
        std::set<std::string> seen;
        for (const auto& s : syms)
            if (!seen.insert(s).second)
                throw ParseError("duplicate symbol '" + s + "' in symbol list",
                                 static_cast<long>(pos));
        return syms;
    }

    // atom ::= Id | {s,...} | P(F) | (F)
    FunctorExpr atom() {
        skip_ws();
        if (pos >= src.size()) throw ParseError("unexpected end of functor expression",
                                                static_cast<long>(pos));
        char c = src[pos];
        if (c == '{') return FunctorExpr::constant(symbol_list("to open constant carrier"));
        if (c == '(') {
            ++pos;
            FunctorExpr f = sum();
            expect(')', "to close group");
            return f;
        }
        if (is_sym_char(c)) {
            std::size_t start = pos;
            std::string word = symbol();
            if (word == "Id") return FunctorExpr::id();
            if (word == "P") {
                expect('(', "after P");
                FunctorExpr inner = sum();
                expect(')', "to close P(...)");
                return FunctorExpr::pow(std::move(inner));
            }
            throw ParseError("unknown functor '" + word + "'", static_cast<long>(start));
        }
        throw ParseError(std::string("unexpected character '") + c + "'",
                         static_cast<long>(pos));
    }

    // suffix ::= atom ('^' {i,...})*
    FunctorExpr suffix() {
        FunctorExpr f = atom();
        while (eat('^')) {
            std::size_t at = pos;
            std::vector<std::string> index = symbol_list("to open exponent index set");
            if (index.empty())
                throw ParseError("empty exponent index set", static_cast<long>(at));
            f = FunctorExpr::exp(std::move(f), std::move(index));
        }
        return f;
    }

    FunctorExpr product() {
        FunctorExpr f = suffix();
        while (eat('*')) f = FunctorExpr::prod(std::move(f), suffix());
        return f;
    }

    FunctorExpr sum() {
        FunctorExpr first = product();
        if (peek() != '+') return first;
        std::vector<FunctorExpr> summands;
        summands.push_back(std::move(first));
        while (eat('+')) summands.push_back(product());
        return FunctorExpr::coprod(std::move(summands));
    }
};

// Printing precedence levels: sum < product < suffix/atom.
void print_rec(const FunctorExpr& f, int level, std::ostream& out) {
    switch (f.kind) {
        case FunctorExpr::Kind::Id:
            out << "Id";
            return;
        case FunctorExpr::Kind::Const: {
            out << '{';
            for (std::size_t i = 0; i < f.symbols.size(); ++i) {
                if (i) out << ',';
                out << f.symbols[i];
            }
            out << '}';
            return;
        }
        case FunctorExpr::Kind::Pow:
            out << "P(";
            print_rec(f.children[0], 0, out);
            out << ')';
            return;
        case FunctorExpr::Kind::Exp: {
            // base must be an atom to re-parse unambiguously
            bool paren = f.children[0].kind == FunctorExpr::Kind::Prod ||
                         f.children[0].kind == FunctorExpr::Kind::Coprod ||
                         f.children[0].kind == FunctorExpr::Kind::Exp;
            if (paren) out << '(';
            print_rec(f.children[0], 2, out);
            if (paren) out << ')';
            out << "^{";
            for (std::size_t i = 0; i < f.symbols.size(); ++i) {
                if (i) out << ',';
                out << f.symbols[i];
            }
            out << '}';
            return;
        }
        case FunctorExpr::Kind::Prod: {
            if (level > 1) out << '(';
            // left-associative: the left child may itself be a product
            print_rec(f.children[0], 1, out);
            out << '*';
            print_rec(f.children[1], 2, out);
            if (level > 1) out << ')';
            return;
        }
        case FunctorExpr::Kind::Coprod: {
            if (level > 0) out << '(';
            for (std::size_t i = 0; i < f.children.size(); ++i) {
                if (i) out << '+';
                print_rec(f.children[i], 1, out);
            }
            if (level > 0) out << ')';
            return;
        }
    }
}

}  // namespace

FunctorExpr parse_functor(const std::string& src) {
    Parser p(src);
    FunctorExpr f = p.sum();
    p.skip_ws();
    if (p.pos != src.size())
        throw ParseError("trailing input after functor expression", static_cast<long>(p.pos));
    return f;
}

std::string print_functor(const FunctorExpr& f) {
    std::ostringstream out;
    print_rec(f, 0, out);
    return out.str();
}

namespace {

bool mul_ok(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
    return !__builtin_mul_overflow(a, b, &out);
}

bool add_ok(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
    return !__builtin_add_overflow(a, b, &out);
}

bool pow_ok(std::uint64_t base, std::uint64_t e, std::uint64_t& out) {
    out = 1;
    for (std::uint64_t i = 0; i < e; ++i)
        if (!mul_ok(out, base, out)) return false;
    return true;
}

}  // namespace

std::optional<std::uint64_t> count_terms(const FunctorExpr& f, std::uint32_t n) {
    switch (f.kind) {
        case FunctorExpr::Kind::Const:
            return f.symbols.size();
        case FunctorExpr::Kind::Id:
            return n;
        case FunctorExpr::Kind::Prod: {
            auto l = count_terms(f.children[0], n);
            auto r = count_terms(f.children[1], n);
            std::uint64_t out;
            if (!l || !r || !mul_ok(*l, *r, out)) return std::nullopt;
            return out;
        }
        case FunctorExpr::Kind::Coprod: {
            std::uint64_t total = 0;
            for (const auto& c : f.children) {
                auto k = count_terms(c, n);
                if (!k || !add_ok(total, *k, total)) return std::nullopt;
            }
            return total;
        }
        case FunctorExpr::Kind::Exp: {
            auto b = count_terms(f.children[0], n);
            std::uint64_t out;
            if (!b || !pow_ok(*b, f.symbols.size(), out)) return std::nullopt;
            return out;
        }
        case FunctorExpr::Kind::Pow: {
            auto b = count_terms(f.children[0], n);
            if (!b || *b >= 64) return std::nullopt;
            return std::uint64_t{1} << *b;
        }
    }
    return std::nullopt;
}

}  // namespace coalg
