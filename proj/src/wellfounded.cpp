#include "coalg/wellfounded.hpp"

namespace coalg {

std::vector<bool> next_time(const Coalgebra& c, const std::vector<bool>& s) {
    std::vector<bool> out(c.n, false);
    for (StateId x = 0; x < c.n; ++x) {
        bool inside = true;
        for (StateId y : support(c.structure[x]))
            if (!s[y]) {
                inside = false;
                break;
            }
        out[x] = inside;
    }
    return out;
}

std::vector<StateId> WfReport::part_states() const {
    std::vector<StateId> out;
    for (StateId x = 0; x < part.size(); ++x)
        if (part[x]) out.push_back(x);
    return out;
}

WfReport well_founded_part(const Coalgebra& c) {
    WfReport report;
    report.part.assign(c.n, false);
    report.rank.assign(c.n, 0);
    std::vector<bool> current(c.n, false);
    std::uint32_t round = 0;
    while (true) {
        std::vector<bool> next = next_time(c, current);
        if (next == current) break;
        for (StateId x = 0; x < c.n; ++x)
            if (next[x] && !current[x]) report.rank[x] = round;
        current = std::move(next);
        ++round;
    }
    report.part = std::move(current);
    report.rounds = round;
    report.is_well_founded = true;
    for (StateId x = 0; x < c.n; ++x)
        if (!report.part[x]) {
            report.is_well_founded = false;
            break;
        }
    return report;
}

namespace {

std::int64_t sum_slots(const Term& t, const std::vector<std::int64_t>& args) {
    if (t.kind == Term::Kind::StateRef) return args[t.index];
    std::int64_t total = 0;
    for (const auto& c : t.children) total += sum_slots(c, args);
    return total;
}

std::int64_t max_slots(const Term& t, const std::vector<std::int64_t>& args) {
    if (t.kind == Term::Kind::StateRef) return args[t.index];
    std::int64_t best = 0;
    for (const auto& c : t.children) best = std::max(best, max_slots(c, args));
    return best;
}

}  // namespace

AlgebraRule<std::int64_t> size_algebra() {
    return [](const Term& image, const std::vector<std::int64_t>& args) {
        return 1 + sum_slots(image, args);
    };
}

AlgebraRule<std::int64_t> depth_algebra() {
    return [](const Term& image, const std::vector<std::int64_t>& args) {
        return 1 + max_slots(image, args);
    };
}

AlgebraRule<std::int64_t> detector_algebra() {
    return [](const Term& image, const std::vector<std::int64_t>& args) -> std::int64_t {
        if (image.kind != Term::Kind::SetOf)
            throw FunctorMismatch("the detector algebra is defined for P(Id) only");
        bool has1 = false, has2 = false, only0 = true;
        for (const auto& e : image.children) {
            if (e.kind != Term::Kind::StateRef)
                throw FunctorMismatch("the detector algebra is defined for P(Id) only");
            std::int64_t v = args[e.index];
            if (v == 1) has1 = true;
            if (v == 2) has2 = true;
            if (v != 0) only0 = false;
        }
        if (image.children.empty() || only0) return 0;
        if (has1) return 1;
        if (has2) return 2;
        return 0;
    };
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> detector_homomorphisms(
    const Coalgebra& c) {
    if (!(c.functor == FunctorExpr::pow(FunctorExpr::id())))
        throw FunctorMismatch("detector homomorphisms are defined for P(Id) only");
    WfReport report = well_founded_part(c);
    std::vector<std::int64_t> h1(c.n), h2(c.n);
    for (StateId x = 0; x < c.n; ++x) {
        h1[x] = report.part[x] ? 0 : 1;
        h2[x] = report.part[x] ? 0 : 2;
    }
    return {h1, h2};
}

}  // namespace coalg
