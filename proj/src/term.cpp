#include "coalg/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "coalg/errors.hpp"

namespace coalg {

bool Term::operator==(const Term& o) const {
    return kind == o.kind && index == o.index && children == o.children;
}

Term Term::const_val(std::uint32_t symbol_pos) {
    Term t;
    t.kind = Kind::ConstVal;
    t.index = symbol_pos;
    return t;
}

Term Term::state_ref(StateId s) {
    Term t;
    t.kind = Kind::StateRef;
    t.index = s;
    return t;
}

Term Term::pair(Term l, Term r) {
    Term t;
    t.kind = Kind::Pair;
    t.children.push_back(std::move(l));
    t.children.push_back(std::move(r));
    return t;
}

Term Term::inj(std::uint32_t tag, Term payload) {
    Term t;
    t.kind = Kind::Inj;
    t.index = tag;
    t.children.push_back(std::move(payload));
    return t;
}

Term Term::tab(std::vector<Term> entries) {
    Term t;
    t.kind = Kind::Tab;
    t.children = std::move(entries);
    return t;
}

Term Term::set_of(std::vector<Term> elements) {
    Term t;
    t.kind = Kind::SetOf;
    t.children = std::move(elements);
    std::sort(t.children.begin(), t.children.end(), term_less);
    t.children.erase(std::unique(t.children.begin(), t.children.end()), t.children.end());
    return t;
}

int compare_terms(const Term& a, const Term& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.index != b.index) return a.index < b.index ? -1 : 1;
    std::size_t common = std::min(a.children.size(), b.children.size());
    for (std::size_t i = 0; i < common; ++i)
        if (int c = compare_terms(a.children[i], b.children[i])) return c;
    if (a.children.size() != b.children.size())
        return a.children.size() < b.children.size() ? -1 : 1;
    return 0;
}

bool term_less(const Term& a, const Term& b) { return compare_terms(a, b) < 0; }

Term canonicalize_term(const Term& t) {
    Term out = t;
    for (auto& c : out.children) c = canonicalize_term(c);
    if (out.kind == Term::Kind::SetOf) {
        std::sort(out.children.begin(), out.children.end(), term_less);
        out.children.erase(std::unique(out.children.begin(), out.children.end()),
                           out.children.end());
    }
    return out;
}

Term map_term(const Term& t, std::span<const StateId> f, std::uint32_t n_target) {
    switch (t.kind) {
        case Term::Kind::ConstVal:
            return t;
        case Term::Kind::StateRef: {
            if (t.index >= f.size())
                throw DomainError("map_term: state @" + std::to_string(t.index) +
                                  " outside the source carrier");
            StateId img = f[t.index];
            if (img >= n_target)
                throw DomainError("map_term: image state @" + std::to_string(img) +
                                  " outside the target carrier");
            return Term::state_ref(img);
        }
        default: {
            Term out;
            out.kind = t.kind;
            out.index = t.index;
            out.children.reserve(t.children.size());
            for (const auto& c : t.children) out.children.push_back(map_term(c, f, n_target));
            if (out.kind == Term::Kind::SetOf) {
                std::sort(out.children.begin(), out.children.end(), term_less);
                out.children.erase(std::unique(out.children.begin(), out.children.end()),
                                   out.children.end());
            }
            return out;
        }
    }
}

namespace {

void collect_support(const Term& t, std::vector<StateId>& acc) {
    if (t.kind == Term::Kind::StateRef) {
        acc.push_back(t.index);
        return;
    }
    for (const auto& c : t.children) collect_support(c, acc);
}

}  // namespace

std::vector<StateId> support(const Term& t) {
    std::vector<StateId> acc;
    collect_support(t, acc);
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

void validate_term(const Term& t, const FunctorExpr& f, std::uint32_t n) {
    switch (f.kind) {
        case FunctorExpr::Kind::Const:
            if (t.kind != Term::Kind::ConstVal || t.index >= f.symbols.size() ||
                !t.children.empty())
                throw DomainError("term does not match constant carrier " + print_functor(f));
            return;
        case FunctorExpr::Kind::Id:
            if (t.kind != Term::Kind::StateRef || t.index >= n)
                throw DomainError("term is not a state reference below " + std::to_string(n));
            return;
        case FunctorExpr::Kind::Prod:
            if (t.kind != Term::Kind::Pair || t.children.size() != 2)
                throw DomainError("term is not a pair");
            validate_term(t.children[0], f.children[0], n);
            validate_term(t.children[1], f.children[1], n);
            return;
        case FunctorExpr::Kind::Coprod:
            if (t.kind != Term::Kind::Inj || t.index >= f.children.size() ||
                t.children.size() != 1)
                throw DomainError("term is not an injection into " + print_functor(f));
            validate_term(t.children[0], f.children[t.index], n);
            return;
        case FunctorExpr::Kind::Exp:
            if (t.kind != Term::Kind::Tab || t.children.size() != f.symbols.size())
                throw DomainError("term is not a total table over " + print_functor(f));
            for (const auto& c : t.children) validate_term(c, f.children[0], n);
            return;
        case FunctorExpr::Kind::Pow: {
            if (t.kind != Term::Kind::SetOf) throw DomainError("term is not a finite set");
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                validate_term(t.children[i], f.children[0], n);
                if (i && compare_terms(t.children[i - 1], t.children[i]) >= 0)
                    throw DomainError("set elements are not sorted and duplicate-free");
            }
            return;
        }
    }
}

bool is_well_typed(const Term& t, const FunctorExpr& f, std::uint32_t n) {
    try {
        validate_term(t, f, n);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

namespace {

void enumerate_rec(const FunctorExpr& f, std::uint32_t n, std::vector<Term>& out,
                   std::uint64_t limit) {
    switch (f.kind) {
        case FunctorExpr::Kind::Const:
            for (std::uint32_t i = 0; i < f.symbols.size(); ++i)
                out.push_back(Term::const_val(i));
            return;
        case FunctorExpr::Kind::Id:
            for (StateId s = 0; s < n; ++s) out.push_back(Term::state_ref(s));
            return;
        case FunctorExpr::Kind::Prod: {
            std::vector<Term> left, right;
            enumerate_rec(f.children[0], n, left, limit);
            enumerate_rec(f.children[1], n, right, limit);
            for (const auto& l : left)
                for (const auto& r : right) out.push_back(Term::pair(l, r));
            return;
        }
        case FunctorExpr::Kind::Coprod:
            for (std::uint32_t tag = 0; tag < f.children.size(); ++tag) {
                std::vector<Term> sub;
                enumerate_rec(f.children[tag], n, sub, limit);
                for (auto& s : sub) out.push_back(Term::inj(tag, std::move(s)));
            }
            return;
        case FunctorExpr::Kind::Exp: {
            std::vector<Term> base;
            enumerate_rec(f.children[0], n, base, limit);
            std::size_t arity = f.symbols.size();
            if (base.empty()) {
                if (arity == 0) out.push_back(Term::tab({}));
                return;
            }
            std::vector<std::size_t> odo(arity, 0);
            while (true) {
                std::vector<Term> entries;
                entries.reserve(arity);
                for (std::size_t i = 0; i < arity; ++i) entries.push_back(base[odo[i]]);
                out.push_back(Term::tab(std::move(entries)));
                std::size_t i = arity;
                bool done = true;
                while (i > 0) {
                    --i;
                    if (++odo[i] < base.size()) {
                        done = false;
                        break;
                    }
                    odo[i] = 0;
                }
                if (done) return;
            }
        }
        case FunctorExpr::Kind::Pow: {
            std::vector<Term> base;
            enumerate_rec(f.children[0], n, base, limit);
            if (base.size() >= 63 || (std::uint64_t{1} << base.size()) > limit)
                throw ResourceLimit("powerset enumeration over " +
                                    std::to_string(base.size()) + " elements exceeds the bound");
            std::uint64_t total = std::uint64_t{1} << base.size();
            for (std::uint64_t mask = 0; mask < total; ++mask) {
                std::vector<Term> elems;
                for (std::size_t i = 0; i < base.size(); ++i)
                    if (mask & (std::uint64_t{1} << i)) elems.push_back(base[i]);
                out.push_back(Term::set_of(std::move(elems)));
            }
            return;
        }
    }
}

}  // namespace

std::vector<Term> enumerate_terms(const FunctorExpr& f, std::uint32_t n, std::uint64_t limit) {
    auto card = count_terms(f, n);
    if (!card || *card > limit)
        throw ResourceLimit("H applied to a carrier of " + std::to_string(n) +
                            " states has too many elements to enumerate");
    std::vector<Term> out;
    out.reserve(static_cast<std::size_t>(*card));
    enumerate_rec(f, n, out, limit);
    std::sort(out.begin(), out.end(), term_less);
    return out;
}

// ── rendering ───────────────────────────────────────────────────────────────

namespace {

void render_rec(const Term& t, const FunctorExpr& f, const LeafPrinter& leaf,
                std::ostream& out) {
    switch (t.kind) {
        case Term::Kind::ConstVal:
            out << f.symbols[t.index];
            return;
        case Term::Kind::StateRef:
            if (leaf)
                out << leaf(t.index);
            else
                out << '@' << t.index;
            return;
        case Term::Kind::Pair:
            out << '(';
            render_rec(t.children[0], f.children[0], leaf, out);
            out << ", ";
            render_rec(t.children[1], f.children[1], leaf, out);
            out << ')';
            return;
        case Term::Kind::Inj:
            out << "inj " << t.index << ' ';
            render_rec(t.children[0], f.children[t.index], leaf, out);
            return;
        case Term::Kind::Tab: {
            out << '[';
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                if (i) out << ", ";
                out << f.symbols[i] << ": ";
                render_rec(t.children[i], f.children[0], leaf, out);
            }
            out << ']';
            return;
        }
        case Term::Kind::SetOf: {
            out << '{';
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                if (i) out << ", ";
                render_rec(t.children[i], f.children[0], leaf, out);
            }
            out << '}';
            return;
        }
    }
}

}  // namespace

std::string render_term(const Term& t, const FunctorExpr& f, const LeafPrinter& leaf) {
    std::ostringstream out;
    render_rec(t, f, leaf, out);
    return out.str();
}

// ── typed parsing ───────────────────────────────────────────────────────────

namespace {

struct TermParser {
    const std::string& src;
    std::uint32_t n;
    std::size_t pos = 0;

    TermParser(const std::string& s, std::uint32_t carrier) : src(s), n(carrier) {}

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

    void expect(char c) {
        if (!eat(c))
            throw ParseError(std::string("expected '") + c + "' in term",
                             static_cast<long>(pos));
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && is_sym_char(src[pos])) ++pos;
        if (pos == start) throw ParseError("expected a symbol in term", static_cast<long>(pos));
        return src.substr(start, pos - start);
    }

    static bool is_sym_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' ||
               c == '-' || c == '.';
    }

    std::uint32_t number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start || pos - start > 9)
            throw ParseError("expected a number in term", static_cast<long>(pos));
        return static_cast<std::uint32_t>(std::stoul(src.substr(start, pos - start)));
    }

    Term parse(const FunctorExpr& f) {
        skip_ws();
        switch (f.kind) {
            case FunctorExpr::Kind::Id: {
                expect('@');
                std::uint32_t s = number();
                if (s >= n)
                    throw ParseError("state @" + std::to_string(s) + " outside carrier of " +
                                         std::to_string(n),
                                     static_cast<long>(pos));
                return Term::state_ref(s);
            }
            case FunctorExpr::Kind::Const: {
                std::size_t at = pos;
                std::string sym = word();
                for (std::uint32_t i = 0; i < f.symbols.size(); ++i)
                    if (f.symbols[i] == sym) return Term::const_val(i);
                throw ParseError("symbol '" + sym + "' is not in carrier " + print_functor(f),
                                 static_cast<long>(at));
            }
            case FunctorExpr::Kind::Prod: {
                expect('(');
                Term l = parse(f.children[0]);
                expect(',');
                Term r = parse(f.children[1]);
                expect(')');
                return Term::pair(std::move(l), std::move(r));
            }
            case FunctorExpr::Kind::Coprod: {
                skip_ws();
                std::size_t at = pos;
                std::string kw = word();
                if (kw != "inj")
                    throw ParseError("expected 'inj' for a coproduct element",
                                     static_cast<long>(at));
                std::uint32_t tag = number();
                if (tag >= f.children.size())
                    throw ParseError("injection tag " + std::to_string(tag) + " out of range",
                                     static_cast<long>(pos));
                return Term::inj(tag, parse(f.children[tag]));
            }
            case FunctorExpr::Kind::Exp: {
                expect('[');
                std::vector<Term> entries(f.symbols.size());
                std::vector<bool> filled(f.symbols.size(), false);
                if (!eat(']')) {
                    do {
                        std::size_t at = pos;
                        std::string key = word();
                        expect(':');
                        Term val = parse(f.children[0]);
                        bool found = false;
                        for (std::uint32_t i = 0; i < f.symbols.size(); ++i)
                            if (f.symbols[i] == key) {
                                if (filled[i])
                                    throw ParseError("duplicate table entry '" + key + "'",
                                                     static_cast<long>(at));
                                entries[i] = std::move(val);
                                filled[i] = true;
                                found = true;
                                break;
                            }
                        if (!found)
                            throw ParseError("'" + key + "' is not an index of " +
                                                 print_functor(f),
                                             static_cast<long>(at));
                    } while (eat(','));
                    expect(']');
                }
                for (std::size_t i = 0; i < filled.size(); ++i)
                    if (!filled[i])
                        throw ParseError("table is missing entry for '" + f.symbols[i] + "'",
                                         static_cast<long>(pos));
                return Term::tab(std::move(entries));
            }
            case FunctorExpr::Kind::Pow: {
                expect('{');
                std::vector<Term> elems;
                if (!eat('}')) {
                    do {
                        elems.push_back(parse(f.children[0]));
                    } while (eat(','));
                    expect('}');
                }
                return Term::set_of(std::move(elems));
            }
        }
        throw ParseError("unreachable term shape", static_cast<long>(pos));
    }
};

}  // namespace

Term parse_term(const std::string& src, const FunctorExpr& f, std::uint32_t n) {
    TermParser p(src, n);
    Term t = p.parse(f);
    p.skip_ws();
    if (p.pos != src.size())
        throw ParseError("trailing input after term", static_cast<long>(p.pos));
    return t;
}

}  // namespace coalg
