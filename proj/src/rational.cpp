#include "coalg/rational.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "coalg/errors.hpp"

namespace coalg {

std::string digest_of(const PointedCoalgebra& canonical) {
    std::ostringstream out;
    out << print_functor(canonical.base.functor) << '|' << canonical.base.n << '|';
    for (StateId x = 0; x < canonical.base.n; ++x) {
        if (x) out << ';';
        out << render_term(canonical.base.structure[x], canonical.base.functor);
    }
    return out.str();
}

CanonicalForm canonical_form(const PointedCoalgebra& pc) {
    ReachablePart rp = reachable_part(pc);
    if (rp.coalg.base.n != pc.base.n) {
        std::ostringstream msg;
        msg << "not well-pointed: the subcoalgebra reachable from the point {";
        const auto& kept = rp.embedding.map;
        for (std::size_t i = 0; i < kept.size(); ++i) msg << (i ? "," : "") << kept[i];
        msg << "} is proper";
        throw NotWellPointed(msg.str());
    }
    SimpleQuotient sq = simple_quotient(pc.base);
    if (sq.partition.blocks != pc.base.n) {
        for (StateId x = 0; x < pc.base.n; ++x)
            for (StateId y = x + 1; y < pc.base.n; ++y)
                if (sq.partition.block_of[x] == sq.partition.block_of[y])
                    throw NotWellPointed("not well-pointed: states " + std::to_string(x) +
                                         " and " + std::to_string(y) + " are behaviorally equal");
    }
    CanonicalForm out;
    out.coalg = canonical_renumber(pc);
    out.digest = digest_of(out.coalg);
    return out;
}

bool is_isomorphic(const PointedCoalgebra& a, const PointedCoalgebra& b) {
    return canonical_form(a).digest == canonical_form(b).digest;
}

RhoElement wp_element(const PointedCoalgebra& pc) {
    RhoElement r;
    r.form.coalg = wp(pc);
    r.form.digest = digest_of(r.form.coalg);
    r.size = r.form.coalg.base.n;
    r.well_founded = well_founded_part(r.form.coalg.base).is_well_founded;
    return r;
}

std::vector<RhoElement> a_plus(const Coalgebra& c) {
    // The simple quotient does not depend on the point; hoist it and only
    // re-run the reachable part per state.
    SimpleQuotient sq = simple_quotient(c);
    std::map<StateId, RhoElement> by_block;
    std::vector<RhoElement> out;
    out.reserve(c.n);
    for (StateId x = 0; x < c.n; ++x) {
        StateId b = sq.partition.block_of[x];
        auto it = by_block.find(b);
        if (it == by_block.end()) {
            ReachablePart rp = reachable_part(PointedCoalgebra{sq.coalg, b});
            RhoElement r;
            r.form.coalg = canonical_renumber(rp.coalg);
            r.form.digest = digest_of(r.form.coalg);
            r.size = r.form.coalg.base.n;
            r.well_founded = well_founded_part(r.form.coalg.base).is_well_founded;
            it = by_block.emplace(b, std::move(r)).first;
        }
        out.push_back(it->second);
    }
    return out;
}

namespace {

DigestTerm digest_term_from(const Coalgebra& c, StateId x, const std::vector<RhoElement>& ap) {
    DigestTerm dt;
    dt.labels.reserve(ap.size());
    for (const auto& r : ap) dt.labels.push_back(r.form.digest);
    std::sort(dt.labels.begin(), dt.labels.end());
    dt.labels.erase(std::unique(dt.labels.begin(), dt.labels.end()), dt.labels.end());
    std::vector<StateId> rank(c.n);
    for (StateId y = 0; y < c.n; ++y) {
        auto it = std::lower_bound(dt.labels.begin(), dt.labels.end(), ap[y].form.digest);
        rank[y] = static_cast<StateId>(it - dt.labels.begin());
    }
    dt.term = map_term(c.structure[x], rank, static_cast<std::uint32_t>(dt.labels.size()));
    return dt;
}

}  // namespace

std::string render_digest_term(const DigestTerm& dt, const FunctorExpr& f) {
    return render_term(dt.term, f,
                       [&](StateId k) { return "<" + dt.labels[k] + ">"; });
}

DigestTerm rho_structure(const RhoElement& r) {
    const Coalgebra& base = r.form.coalg.base;
    return digest_term_from(base, r.form.coalg.point, a_plus(base));
}

DigestTerm digest_image(const Coalgebra& c, StateId x,
                        const std::vector<RhoElement>& a_plus_of_c) {
    return digest_term_from(c, x, a_plus_of_c);
}

bool in_mu(const RhoElement& r) { return r.well_founded; }

std::vector<RhoElement> enumerate_wp(const FunctorExpr& f, std::uint32_t max_states,
                                     bool only_well_founded, std::uint64_t limit) {
    // Cost guard over the raw structure-map space.
    std::uint64_t total_cost = 0;
    for (std::uint32_t n = 1; n <= max_states; ++n) {
        auto card = count_terms(f, n);
        if (!card) throw ResourceLimit("term space too large to enumerate");
        std::uint64_t maps = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (__builtin_mul_overflow(maps, *card, &maps))
                throw ResourceLimit("structure-map space too large to enumerate");
        }
        std::uint64_t cost;
        if (__builtin_mul_overflow(maps, static_cast<std::uint64_t>(n), &cost) ||
            __builtin_add_overflow(total_cost, cost, &total_cost))
            throw ResourceLimit("structure-map space too large to enumerate");
    }
    if (total_cost > limit)
        throw ResourceLimit("enumeration of " + std::to_string(total_cost) +
                            " pointed coalgebras exceeds the configured bound of " +
                            std::to_string(limit));

    std::map<std::string, RhoElement> found;
    for (std::uint32_t n = 1; n <= max_states; ++n) {
        std::vector<Term> terms = enumerate_terms(f, n, limit);
        if (terms.empty()) continue;  // H(n) empty: no coalgebras on n states
        std::vector<std::size_t> odo(n, 0);
        while (true) {
            Coalgebra c;
            c.functor = f;
            c.n = n;
            c.structure.reserve(n);
            for (std::uint32_t i = 0; i < n; ++i) c.structure.push_back(terms[odo[i]]);

            SimpleQuotient sq = simple_quotient(c);
            for (StateId p = 0; p < n; ++p) {
                ReachablePart rp =
                    reachable_part(PointedCoalgebra{sq.coalg, sq.partition.block_of[p]});
                PointedCoalgebra canon = canonical_renumber(rp.coalg);
                std::string digest = digest_of(canon);
                if (found.count(digest)) continue;
                RhoElement r;
                r.form.coalg = std::move(canon);
                r.form.digest = digest;
                r.size = r.form.coalg.base.n;
                r.well_founded = well_founded_part(r.form.coalg.base).is_well_founded;
                found.emplace(std::move(digest), std::move(r));
            }

            std::size_t i = n;
            bool done = true;
            while (i > 0) {
                --i;
                if (++odo[i] < terms.size()) {
                    done = false;
                    break;
                }
                odo[i] = 0;
            }
            if (done) break;
        }
    }

    std::vector<RhoElement> out;
    out.reserve(found.size());
    for (auto& [digest, r] : found)
        if (!only_well_founded || r.well_founded) out.push_back(std::move(r));
    return out;
}

}  // namespace coalg
