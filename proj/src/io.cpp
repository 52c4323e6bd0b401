#include "coalg/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

#include "coalg/errors.hpp"

namespace coalg {

PointedCoalgebra CoalgebraFile::pointed(const std::string& what) const {
    if (!point) throw DomainError(what + " needs a pointed coalgebra, but no point is set");
    return PointedCoalgebra::make(coalg, *point);
}

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Splits a file into logical lines: comments and blanks removed.
std::vector<std::pair<int, std::string>> logical_lines(const std::string& src) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(src);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (!line.empty()) out.emplace_back(no, line);
    }
    return out;
}

std::pair<std::string, std::string> split_key(const std::string& line, int no) {
    auto colon = line.find(':');
    if (colon == std::string::npos)
        throw ParseError("line " + std::to_string(no) + ": expected 'key: value'");
    return {strip(line.substr(0, colon)), strip(line.substr(colon + 1))};
}

std::uint32_t parse_nat(const std::string& s, int no) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        }))
        throw ParseError("line " + std::to_string(no) + ": expected a number, got '" + s + "'");
    return static_cast<std::uint32_t>(std::stoul(s));
}

}  // namespace

CoalgebraFile parse_coalgebra_text(const std::string& src) {
    auto lines = logical_lines(src);
    std::size_t at = 0;
    auto next_line = [&]() -> std::pair<int, std::string> {
        if (at >= lines.size()) throw ParseError("unexpected end of coalgebra file");
        return lines[at++];
    };

    auto [no1, l1] = next_line();
    auto [k1, v1] = split_key(l1, no1);
    if (k1 != "functor")
        throw ParseError("line " + std::to_string(no1) + ": expected 'functor: <expr>'");
    FunctorExpr f = parse_functor(v1);

    auto [no2, l2] = next_line();
    auto [k2, v2] = split_key(l2, no2);
    if (k2 != "states")
        throw ParseError("line " + std::to_string(no2) + ": expected 'states: <n>'");
    std::uint32_t n = parse_nat(v2, no2);

    std::optional<StateId> point;
    std::vector<std::optional<Term>> structure(n);
    while (at < lines.size()) {
        auto [no, l] = next_line();
        auto [k, v] = split_key(l, no);
        if (k == "point") {
            point = parse_nat(v, no);
            continue;
        }
        std::uint32_t x = parse_nat(k, no);
        if (x >= n)
            throw ParseError("line " + std::to_string(no) + ": state " + std::to_string(x) +
                             " outside carrier of " + std::to_string(n));
        if (structure[x])
            throw ParseError("line " + std::to_string(no) + ": duplicate state " +
                             std::to_string(x));
        try {
            structure[x] = parse_term(v, f, n);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(no) + ": " + e.what());
        }
    }
    std::vector<Term> terms;
    terms.reserve(n);
    for (std::uint32_t x = 0; x < n; ++x) {
        if (!structure[x])
            throw ParseError("missing structure line for state " + std::to_string(x));
        terms.push_back(std::move(*structure[x]));
    }

    CoalgebraFile out;
    out.coalg = Coalgebra::make(std::move(f), std::move(terms));
    if (point) {
        if (*point >= n)
            throw ParseError("point " + std::to_string(*point) + " outside carrier of " +
                             std::to_string(n));
        out.point = point;
    }
    return out;
}

std::string write_coalgebra_text(const Coalgebra& c, std::optional<StateId> point) {
    std::ostringstream out;
    out << "functor: " << print_functor(c.functor) << '\n';
    out << "states: " << c.n << '\n';
    if (point) out << "point: " << *point << '\n';
    for (StateId x = 0; x < c.n; ++x)
        out << x << ": " << render_term(c.structure[x], c.functor) << '\n';
    return out.str();
}

// ── JSON ────────────────────────────────────────────────────────────────────

namespace {

using nlohmann::json;

json term_to_json(const Term& t, const FunctorExpr& f) {
    switch (t.kind) {
        case Term::Kind::ConstVal:
            return json{{"const", f.symbols[t.index]}};
        case Term::Kind::StateRef:
            return json{{"state", t.index}};
        case Term::Kind::Pair:
            return json{{"pair", json::array({term_to_json(t.children[0], f.children[0]),
                                              term_to_json(t.children[1], f.children[1])})}};
        case Term::Kind::Inj:
            return json{{"inj", t.index},
                        {"of", term_to_json(t.children[0], f.children[t.index])}};
        case Term::Kind::Tab: {
            json entries = json::object();
            for (std::size_t i = 0; i < t.children.size(); ++i)
                entries[f.symbols[i]] = term_to_json(t.children[i], f.children[0]);
            return json{{"tab", entries}};
        }
        case Term::Kind::SetOf: {
            json elems = json::array();
            for (const auto& e : t.children) elems.push_back(term_to_json(e, f.children[0]));
            return json{{"set", elems}};
        }
    }
    return json();
}

Term term_from_json(const json& j, const FunctorExpr& f, std::uint32_t n) {
    if (!j.is_object()) throw ParseError("term JSON must be an object");
    switch (f.kind) {
        case FunctorExpr::Kind::Const: {
            if (!j.contains("const")) throw ParseError("expected a {\"const\": ...} term");
            std::string sym = j.at("const").get<std::string>();
            for (std::uint32_t i = 0; i < f.symbols.size(); ++i)
                if (f.symbols[i] == sym) return Term::const_val(i);
            throw ParseError("symbol '" + sym + "' is not in carrier " + print_functor(f));
        }
        case FunctorExpr::Kind::Id: {
            if (!j.contains("state")) throw ParseError("expected a {\"state\": ...} term");
            std::uint32_t s = j.at("state").get<std::uint32_t>();
            if (s >= n) throw ParseError("state " + std::to_string(s) + " outside carrier");
            return Term::state_ref(s);
        }
        case FunctorExpr::Kind::Prod: {
            if (!j.contains("pair")) throw ParseError("expected a {\"pair\": ...} term");
            const json& p = j.at("pair");
            if (!p.is_array() || p.size() != 2) throw ParseError("pair needs two components");
            return Term::pair(term_from_json(p[0], f.children[0], n),
                              term_from_json(p[1], f.children[1], n));
        }
        case FunctorExpr::Kind::Coprod: {
            if (!j.contains("inj") || !j.contains("of"))
                throw ParseError("expected a {\"inj\": k, \"of\": ...} term");
            std::uint32_t tag = j.at("inj").get<std::uint32_t>();
            if (tag >= f.children.size()) throw ParseError("injection tag out of range");
            return Term::inj(tag, term_from_json(j.at("of"), f.children[tag], n));
        }
        case FunctorExpr::Kind::Exp: {
            if (!j.contains("tab")) throw ParseError("expected a {\"tab\": ...} term");
            const json& entries = j.at("tab");
            std::vector<Term> children;
            children.reserve(f.symbols.size());
            for (const auto& key : f.symbols) {
                if (!entries.contains(key))
                    throw ParseError("table is missing entry for '" + key + "'");
                children.push_back(term_from_json(entries.at(key), f.children[0], n));
            }
            if (entries.size() != f.symbols.size())
                throw ParseError("table has entries outside the index set");
            return Term::tab(std::move(children));
        }
        case FunctorExpr::Kind::Pow: {
            if (!j.contains("set")) throw ParseError("expected a {\"set\": ...} term");
            std::vector<Term> elems;
            for (const auto& e : j.at("set"))
                elems.push_back(term_from_json(e, f.children[0], n));
            return Term::set_of(std::move(elems));
        }
    }
    throw ParseError("unreachable functor kind");
}

}  // namespace

CoalgebraFile parse_coalgebra_json(const std::string& src) {
    json j;
    try {
        j = json::parse(src);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    try {
        FunctorExpr f = parse_functor(j.at("functor").get<std::string>());
        std::uint32_t n = j.at("states").get<std::uint32_t>();
        const json& structure = j.at("structure");
        if (!structure.is_array() || structure.size() != n)
            throw ParseError("'structure' must list one term per state");
        std::vector<Term> terms;
        terms.reserve(n);
        for (const auto& tj : structure) terms.push_back(term_from_json(tj, f, n));
        CoalgebraFile out;
        out.coalg = Coalgebra::make(std::move(f), std::move(terms));
        if (j.contains("point")) {
            StateId p = j.at("point").get<StateId>();
            if (p >= n) throw ParseError("point outside carrier");
            out.point = p;
        }
        return out;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad coalgebra JSON: ") + e.what());
    }
}

std::string write_coalgebra_json(const Coalgebra& c, std::optional<StateId> point) {
    json j;
    j["functor"] = print_functor(c.functor);
    j["states"] = c.n;
    if (point) j["point"] = *point;
    json structure = json::array();
    for (StateId x = 0; x < c.n; ++x) structure.push_back(term_to_json(c.structure[x], c.functor));
    j["structure"] = std::move(structure);
    return j.dump(2) + "\n";
}

CoalgebraFile parse_coalgebra(const std::string& src) {
    for (char ch : src) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{' ? parse_coalgebra_json(src) : parse_coalgebra_text(src);
    }
    throw ParseError("empty coalgebra file");
}

// ── Moore machines ──────────────────────────────────────────────────────────

namespace {

std::vector<std::string> split_commas(const std::string& s, int no) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = strip(item);
        if (item.empty())
            throw ParseError("line " + std::to_string(no) + ": empty symbol in list");
        out.push_back(item);
    }
    if (out.empty()) throw ParseError("line " + std::to_string(no) + ": empty symbol list");
    return out;
}

}  // namespace

MooreMachine parse_moore_text(const std::string& src) {
    auto lines = logical_lines(src);
    MooreMachine m;
    std::size_t at = 0;
    auto expect_kv = [&](const std::string& key) -> std::pair<int, std::string> {
        if (at >= lines.size()) throw ParseError("unexpected end of machine file");
        auto [no, l] = lines[at++];
        auto [k, v] = split_key(l, no);
        if (k != key)
            throw ParseError("line " + std::to_string(no) + ": expected '" + key + ": ...'");
        return {no, v};
    };
    {
        auto [no, v] = expect_kv("inputs");
        m.inputs = split_commas(v, no);
    }
    {
        auto [no, v] = expect_kv("outputs");
        m.outputs = split_commas(v, no);
    }
    {
        auto [no, v] = expect_kv("states");
        m.n = parse_nat(v, no);
    }
    {
        auto [no, v] = expect_kv("initial");
        m.initial = parse_nat(v, no);
        if (m.initial >= m.n)
            throw ParseError("line " + std::to_string(no) + ": initial state out of range");
    }
    m.next.assign(m.n, {});
    m.out.assign(m.n, 0);
    std::vector<bool> seen(m.n, false);
    while (at < lines.size()) {
        auto [no, l] = lines[at++];
        auto [k, v] = split_key(l, no);
        std::uint32_t q = parse_nat(k, no);
        if (q >= m.n || seen[q])
            throw ParseError("line " + std::to_string(no) + ": bad or duplicate state row");
        seen[q] = true;
        auto arrow = v.find("->");
        if (arrow == std::string::npos)
            throw ParseError("line " + std::to_string(no) + ": expected '<nexts> -> <output>'");
        std::istringstream nexts(v.substr(0, arrow));
        std::string cell;
        while (nexts >> cell) {
            std::uint32_t r = parse_nat(cell, no);
            if (r >= m.n)
                throw ParseError("line " + std::to_string(no) + ": next state out of range");
            m.next[q].push_back(r);
        }
        if (m.next[q].size() != m.inputs.size())
            throw ParseError("line " + std::to_string(no) + ": expected one next state per input");
        std::string out_sym = strip(v.substr(arrow + 2));
        bool found = false;
        for (std::uint32_t i = 0; i < m.outputs.size(); ++i)
            if (m.outputs[i] == out_sym) {
                m.out[q] = i;
                found = true;
                break;
            }
        if (!found)
            throw ParseError("line " + std::to_string(no) + ": unknown output '" + out_sym + "'");
    }
    for (std::uint32_t q = 0; q < m.n; ++q)
        if (!seen[q]) throw ParseError("missing row for state " + std::to_string(q));
    return m;
}

std::string write_moore_text(const MooreMachine& m) {
    std::ostringstream out;
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += v[i];
        }
        return s;
    };
    out << "inputs: " << join(m.inputs) << '\n';
    out << "outputs: " << join(m.outputs) << '\n';
    out << "states: " << m.n << '\n';
    out << "initial: " << m.initial << '\n';
    for (StateId q = 0; q < m.n; ++q) {
        out << q << ": ";
        for (std::size_t i = 0; i < m.inputs.size(); ++i) {
            if (i) out << ' ';
            out << m.next[q][i];
        }
        out << " -> " << m.outputs[m.out[q]] << '\n';
    }
    return out.str();
}

// ── DOT ─────────────────────────────────────────────────────────────────────

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string coalgebra_to_dot(const Coalgebra& c, std::optional<StateId> point) {
    std::ostringstream out;
    out << "digraph coalgebra {\n  rankdir=LR;\n  node [shape=box];\n";
    for (StateId x = 0; x < c.n; ++x) {
        out << "  q" << x << " [label=\"" << x << ": "
            << dot_escape(render_term(c.structure[x], c.functor)) << '"';
        if (point && *point == x) out << ", peripheries=2";
        out << "];\n";
    }
    for (StateId x = 0; x < c.n; ++x)
        for (StateId y : support(c.structure[x])) out << "  q" << x << " -> q" << y << ";\n";
    out << "}\n";
    return out.str();
}

std::string tree_to_dot(const Tree& t) {
    std::ostringstream out;
    out << "digraph tree {\n  node [shape=circle];\n";
    int counter = 0;
    std::function<int(const Tree&)> emit = [&](const Tree& node) -> int {
        int id = counter++;
        std::string label;
        switch (node.kind) {
            case Tree::Kind::Const: label = node.symbol; break;
            case Tree::Kind::Pair: label = "pair"; break;
            case Tree::Kind::Inj: label = "inj " + std::to_string(node.index); break;
            case Tree::Kind::Tab: label = "tab"; break;
            case Tree::Kind::SetOf: label = "set"; break;
            case Tree::Kind::Cut:
                label = node.index ? "?" + std::to_string(node.index) : "?";
                break;
        }
        out << "  t" << id << " [label=\"" << dot_escape(label) << "\"];\n";
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            int child = emit(node.children[i]);
            out << "  t" << id << " -> t" << child;
            if (node.kind == Tree::Kind::Tab) out << " [label=\"" << dot_escape(node.keys[i]) << "\"]";
            out << ";\n";
        }
        return id;
    };
    emit(t);
    out << "}\n";
    return out.str();
}

}  // namespace coalg
