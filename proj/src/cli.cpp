#include "coalg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "coalg/errors.hpp"
#include "coalg/instances.hpp"
#include "coalg/io.hpp"
#include "coalg/rational.hpp"
#include "coalg/wellfounded.hpp"

namespace coalg {

namespace {

std::string slurp(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty() || out_path == "-") {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw ParseError("cannot open '" + out_path + "' for writing");
    file << text;
}

std::string format_coalgebra(const Coalgebra& c, std::optional<StateId> point,
                             const std::string& format) {
    if (format == "json") return write_coalgebra_json(c, point);
    if (format == "dot") return coalgebra_to_dot(c, point);
    return write_coalgebra_text(c, point);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"finite coalgebras: minimization, well-founded parts, canonical forms"};
    app.require_subcommand(1);

    std::string file = "-", file2, out_path, format = "text", algebra = "size",
                functor_text, literal;
    int depth = -1;
    std::uint32_t max_states = 3;
    std::uint64_t limit = 4u << 20;
    bool mu_only = false, distinct_cuts = false;

    auto add_common = [&](CLI::App* cmd, bool with_format = true) {
        cmd->add_option("-o,--output", out_path, "write output to a file instead of stdout");
        if (with_format)
            cmd->add_option("--format", format, "output format")
                ->check(CLI::IsMember({"text", "json", "dot"}));
    };

    auto* cmd_wp = app.add_subcommand("wp", "well-pointed modification of a pointed coalgebra");
    cmd_wp->add_option("file", file, "coalgebra file ('-' for stdin)");
    add_common(cmd_wp);

    auto* cmd_min = app.add_subcommand("minimize", "simple quotient (behavioral minimization)");
    cmd_min->add_option("file", file, "coalgebra file");
    add_common(cmd_min);

    auto* cmd_reach = app.add_subcommand("reach", "reachable part from the point");
    cmd_reach->add_option("file", file, "coalgebra file");
    add_common(cmd_reach);

    auto* cmd_wf = app.add_subcommand("wf", "well-founded part, ranks and rounds");
    cmd_wf->add_option("file", file, "coalgebra file");
    add_common(cmd_wf, false);

    auto* cmd_fold = app.add_subcommand("fold", "unique fold into a built-in algebra");
    cmd_fold->add_option("file", file, "coalgebra file");
    cmd_fold->add_option("--algebra", algebra, "one of expansion|size|depth|detector")
        ->check(CLI::IsMember({"expansion", "size", "depth", "detector"}));
    add_common(cmd_fold, false);

    auto* cmd_canon = app.add_subcommand("canon", "canonical form of a well-pointed coalgebra");
    cmd_canon->add_option("file", file, "coalgebra file");
    add_common(cmd_canon);

    auto* cmd_iso = app.add_subcommand("iso", "isomorphism of two well-pointed coalgebras");
    cmd_iso->add_option("file1", file)->required();
    cmd_iso->add_option("file2", file2)->required();
    add_common(cmd_iso, false);

    auto* cmd_aplus = app.add_subcommand("aplus", "behavior digest of every state");
    cmd_aplus->add_option("file", file, "coalgebra file");
    add_common(cmd_aplus, false);

    auto* cmd_rho = app.add_subcommand("rho-step", "coalgebra structure of the point's behavior");
    cmd_rho->add_option("file", file, "coalgebra file");
    add_common(cmd_rho, false);

    auto* cmd_enum = app.add_subcommand("enum", "enumerate finite well-pointed coalgebras");
    cmd_enum->add_option("--functor", functor_text, "functor expression")->required();
    cmd_enum->add_option("--max-states", max_states, "carrier size bound");
    cmd_enum->add_flag("--mu", mu_only, "keep only well-founded elements");
    cmd_enum->add_option("--limit", limit, "raw enumeration bound");
    add_common(cmd_enum, false);

    auto* cmd_moore = app.add_subcommand("moore-min", "minimize a Moore machine");
    cmd_moore->add_option("file", file, "machine file");
    add_common(cmd_moore, false);

    auto* cmd_stream = app.add_subcommand("stream-norm", "minimal lasso of a stream literal");
    cmd_stream->add_option("literal", literal, "u, or u(v)^w")->required();
    add_common(cmd_stream, false);

    auto* cmd_expand = app.add_subcommand("expand", "tree expansion from the point");
    cmd_expand->add_option("file", file, "coalgebra file");
    cmd_expand->add_option("--depth", depth, "cut depth; negative = full expansion");
    cmd_expand->add_flag("--distinct-cuts", distinct_cuts, "give truncation leaves fresh ids");
    add_common(cmd_expand);

    auto* cmd_hfpic = app.add_subcommand("hf-picture", "canonical picture of a set");
    cmd_hfpic->add_option("set", literal, "HF literal like {{},{{}}} or a von Neumann numeral")
        ->required();
    add_common(cmd_hfpic);

    auto* cmd_hfcol = app.add_subcommand("hf-collapse", "Mostowski collapse of a graph");
    cmd_hfcol->add_option("file", file, "coalgebra file over P(Id)");
    add_common(cmd_hfcol, false);

    auto* cmd_dot = app.add_subcommand("export-dot", "canonical graph as Graphviz DOT");
    cmd_dot->add_option("file", file, "coalgebra file");
    cmd_dot->add_option("-o,--output", out_path, "write output to a file instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_wp->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            PointedCoalgebra result = wp(cf.pointed("wp"));
            emit(format_coalgebra(result.base, result.point, format), out_path, out);
        } else if (cmd_min->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            SimpleQuotient sq = simple_quotient(cf.coalg);
            std::optional<StateId> point;
            if (cf.point) point = sq.partition.block_of[*cf.point];
            emit(format_coalgebra(sq.coalg, point, format), out_path, out);
        } else if (cmd_reach->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            ReachablePart rp = reachable_part(cf.pointed("reach"));
            emit(format_coalgebra(rp.coalg.base, rp.coalg.point, format), out_path, out);
        } else if (cmd_wf->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            WfReport report = well_founded_part(cf.coalg);
            std::ostringstream text;
            text << "well_founded: " << (report.is_well_founded ? "true" : "false") << '\n';
            text << "rounds: " << report.rounds << '\n';
            text << "part:";
            for (StateId x : report.part_states()) text << ' ' << x;
            text << '\n';
            for (StateId x : report.part_states())
                text << "rank " << x << ": " << report.rank[x] << '\n';
            emit(text.str(), out_path, out);
        } else if (cmd_fold->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            std::ostringstream text;
            if (algebra == "expansion") {
                auto values = fold<Tree>(cf.coalg, expansion_algebra(cf.coalg.functor));
                for (StateId x = 0; x < cf.coalg.n; ++x)
                    text << x << ": " << render_tree(values[x]) << '\n';
            } else {
                AlgebraRule<std::int64_t> rule = algebra == "size"    ? size_algebra()
                                                 : algebra == "depth" ? depth_algebra()
                                                                      : detector_algebra();
                auto values = fold<std::int64_t>(cf.coalg, rule);
                for (StateId x = 0; x < cf.coalg.n; ++x) text << x << ": " << values[x] << '\n';
            }
            emit(text.str(), out_path, out);
        } else if (cmd_canon->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            CanonicalForm form = canonical_form(cf.pointed("canon"));
            emit(format_coalgebra(form.coalg.base, form.coalg.point, format), out_path, out);
        } else if (cmd_iso->parsed()) {
            CoalgebraFile a = parse_coalgebra(slurp(file, in));
            CoalgebraFile b = parse_coalgebra(slurp(file2, in));
            bool result = is_isomorphic(a.pointed("iso"), b.pointed("iso"));
            emit(result ? "true\n" : "false\n", out_path, out);
        } else if (cmd_aplus->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            std::vector<RhoElement> ap = a_plus(cf.coalg);
            std::ostringstream text;
            for (StateId x = 0; x < cf.coalg.n; ++x)
                text << x << ": " << ap[x].form.digest << '\n';
            emit(text.str(), out_path, out);
        } else if (cmd_rho->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            RhoElement r = wp_element(cf.pointed("rho-step"));
            DigestTerm dt = rho_structure(r);
            emit(render_digest_term(dt, cf.coalg.functor) + "\n", out_path, out);
        } else if (cmd_enum->parsed()) {
            FunctorExpr f = parse_functor(functor_text);
            std::vector<RhoElement> elems = enumerate_wp(f, max_states, mu_only, limit);
            std::ostringstream text;
            for (const auto& r : elems) text << r.form.digest << '\n';
            emit(text.str(), out_path, out);
        } else if (cmd_moore->parsed()) {
            MooreMachine m = parse_moore_text(slurp(file, in));
            emit(write_moore_text(minimize_moore(m)), out_path, out);
        } else if (cmd_stream->parsed()) {
            StreamSpec s = parse_stream(literal);
            emit(print_stream(stream_normalize(s)) + "\n", out_path, out);
        } else if (cmd_expand->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            Tree t = tree_expansion(cf.pointed("expand"), depth, distinct_cuts);
            emit(format == "dot" ? tree_to_dot(t) : render_tree(t) + "\n", out_path, out);
        } else if (cmd_hfpic->parsed()) {
            HFSet s;
            if (!literal.empty() && literal[0] != '{') {
                bool numeric = literal.size() <= 2 &&
                               std::all_of(literal.begin(), literal.end(), [](char c) {
                                   return std::isdigit(static_cast<unsigned char>(c));
                               });
                if (!numeric)
                    throw ParseError("expected an HF literal or a small von Neumann numeral");
                std::uint32_t k = static_cast<std::uint32_t>(std::stoul(literal));
                // the nested-set value of n doubles with every step
                if (k > 15) throw DomainError("numeral too large; the nested set explodes");
                s = von_neumann(k);
            } else {
                s = parse_hf(literal);
            }
            PointedCoalgebra pic = canonical_picture(s);
            emit(format_coalgebra(pic.base, pic.point, format), out_path, out);
        } else if (cmd_hfcol->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            HFSet s = mostowski_collapse(cf.pointed("hf-collapse"));
            emit(print_hf(s) + "\n", out_path, out);
        } else if (cmd_dot->parsed()) {
            CoalgebraFile cf = parse_coalgebra(slurp(file, in));
            emit(coalgebra_to_dot(cf.coalg, cf.point), out_path, out);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace coalg
