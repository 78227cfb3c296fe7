#include "vos/series.hpp"

#include <algorithm>
#include <functional>

namespace vos {

namespace {

// Shared stopping rule: extend the chain H_{i+1} = step(H_i) until a trivial
// term (list ends there) or a repeated nontrivial term (appended once).
void extend_until_stable(std::vector<SubgroupSet>& list,
                         const std::function<SubgroupSet(const SubgroupSet&)>& step) {
    while (list.back().order() > 1) {
        SubgroupSet next = step(list.back());
        bool repeat = next == list.back();
        list.push_back(std::move(next));
        if (repeat) break;
    }
}

} // namespace

std::optional<std::pair<unsigned, unsigned>> prime_power(std::size_t m) {
    if (m < 2) return std::nullopt;
    unsigned p = 0;
    for (unsigned q = 2; std::size_t(q) * q <= m; ++q)
        if (m % q == 0) {
            p = q;
            break;
        }
    if (!p) p = unsigned(m);
    unsigned k = 0;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    if (m != 1) return std::nullopt;
    return std::make_pair(p, k);
}

std::vector<SubgroupSet> lower_central_series(const GroupPtr& g) {
    std::vector<SubgroupSet> list{full_subgroup(g)};
    extend_until_stable(list, [&](const SubgroupSet& prev) {
        return commutator_subgroup(g, prev, full_subgroup(g));
    });
    return list;
}

SubgroupSet vanishing_off_subgroup(const GroupPtr& g) {
    SubgroupSet derived = commutator_subgroup(g, full_subgroup(g), full_subgroup(g));
    std::size_t linearCount = g->order() / derived.order();
    ConjugacyClassData classes = conjugacy_classes(g);
    std::vector<Idx> gens;
    for (Idx x = 0; x < g->order(); ++x)
        if (classes.centralizerOrder[classes.classOf[x]] > linearCount) gens.push_back(x);
    return generated_subgroup(g, gens);
}

std::vector<SubgroupSet> v_series(const GroupPtr& g) {
    std::vector<SubgroupSet> vs{vanishing_off_subgroup(g)};
    extend_until_stable(vs, [&](const SubgroupSet& prev) {
        return commutator_subgroup(g, prev, full_subgroup(g));
    });
    std::vector<SubgroupSet> lcs = lower_central_series(g);
    auto term = [](const std::vector<SubgroupSet>& list, std::size_t i) -> const SubgroupSet& {
        return list[std::min(i, list.size()) - 1];
    };
    std::size_t depth = std::max(vs.size(), lcs.size());
    for (std::size_t i = 1; i <= depth; ++i) {
        if (!term(vs, i).members.subset_of(term(lcs, i).members))
            throw InternalError("series sandwich violated: V_" + std::to_string(i) +
                                " is not contained in G_" + std::to_string(i));
        if (!term(lcs, i + 1).members.subset_of(term(vs, i).members))
            throw InternalError("series sandwich violated: G_" + std::to_string(i + 1) +
                                " is not contained in V_" + std::to_string(i));
    }
    return vs;
}

const SubgroupSet& SeriesProfile::g_term(unsigned i) const {
    if (i < 1) throw ValidationError("series index must be at least 1");
    return lower[std::min<std::size_t>(i, lower.size()) - 1];
}

const SubgroupSet& SeriesProfile::v_term(unsigned i) const {
    if (i < 1) throw ValidationError("series index must be at least 1");
    return vanishing[std::min<std::size_t>(i, vanishing.size()) - 1];
}

SeriesProfile series_profile(const GroupPtr& g) {
    SeriesProfile prof;
    prof.group = g;
    prof.lower = lower_central_series(g);
    prof.vanishing = v_series(g);
    prof.nilpotent = prof.lower.back().order() == 1;
    prof.nilpotenceClass = prof.nilpotent ? unsigned(prof.lower.size()) - 1 : 0;
    prof.p = g->prime();

    std::size_t index1 = g->order() / prof.v_term(1).order();
    if (index1 > 1) {
        if (auto pk = prime_power(index1)) {
            prof.sectionP = pk->first;
            if (pk->second % 2 == 0) prof.n = pk->second / 2;
        }
    }

    for (unsigned i = 3; i <= prof.maxIndex(); ++i) {
        const SubgroupSet& vi = prof.v_term(i);
        prof.Y.emplace(i, centralizer_mod(g, vi, full_subgroup(g)));
        prof.D.emplace(i, centralizer_mod(g, vi, prof.g_term(i - 1)));
        if (i == 3) {
            SubgroupSet derived = commutator_subgroup(g, full_subgroup(g), full_subgroup(g));
            SubgroupSet d3 = centralizer_mod(g, vi, derived);
            if (!(d3 == prof.D.at(3)))
                throw InternalError("D_3 computed from the derived subgroup disagrees with the "
                                    "general formula");
        }
        if (i >= 4) {
            SubgroupSet m{g, prof.g_term(i - 1).members};
            m.members &= prof.Y.at(i).members;
            prof.E.emplace(i, centralizer_mod(g, m, prof.g_term(i - 2)));
        }
    }
    return prof;
}

SeriesSubgroups series_subgroups(const GroupPtr& g, unsigned i) {
    SeriesProfile prof = series_profile(g);
    if (i < 3 || i > prof.maxIndex())
        throw ValidationError("index beyond class: i = " + std::to_string(i) +
                              " but the series has " + std::to_string(prof.maxIndex()) +
                              " terms");
    SeriesSubgroups out{prof.Y.at(i), prof.D.at(i), std::nullopt};
    if (i >= 4) out.E = prof.E.at(i);
    return out;
}

H1Result is_H1(const SeriesProfile& prof, unsigned k) {
    if (k < 3) throw ValidationError("the H_1 property is tracked for indices k >= 3 only");
    const GroupPtr& g = prof.group;
    const SubgroupSet& vk = prof.v_term(k);
    const SubgroupSet& gk = prof.g_term(k);
    if (vk == gk) return {true, std::nullopt};

    for (const SubgroupSet& n : invariant_intermediate_subgroups(g, vk, gk)) {
        QuotientMap q = quotient(g, n.members);
        Bitset imageV(q.target->order()), imageG(q.target->order());
        VOS_FOR_SET(x, prof.v_term(k - 1).members) imageV.set(q.apply(Idx(x)));
        VOS_FOR_SET(x, prof.g_term(k - 1).members) imageG.set(q.apply(Idx(x)));
        imageG &= center(q.target).members;
        if (imageV != imageG) return {false, n};
    }
    return {true, std::nullopt};
}

H1Result is_H1(const GroupPtr& g, unsigned k) { return is_H1(series_profile(g), k); }

CaminaData camina_data(const GroupPtr& g) {
    CaminaData data;
    SubgroupSet derived = commutator_subgroup(g, full_subgroup(g), full_subgroup(g));
    if (derived.order() == 1 || derived.order() == g->order()) return data;

    ConjugacyClassData classes = conjugacy_classes(g);
    data.isCamina = true;
    for (Idx c = 0; c < classes.count() && data.isCamina; ++c) {
        Idx x = classes.representative[c];
        if (derived.contains(x)) continue;
        // cl(x) = xG' as sets: equal sizes plus cl(x) contained in xG'
        if (classes.classSize[c] != derived.order()) {
            data.isCamina = false;
            data.witness = x;
            break;
        }
        for (Idx y = 0; y < g->order(); ++y)
            if (classes.classOf[y] == c && !derived.contains(g->mul(g->inv(x), y))) {
                data.isCamina = false;
                data.witness = x;
                break;
            }
    }
    if (!data.isCamina) return data;

    std::vector<SubgroupSet> lcs = lower_central_series(g);
    bool nilpotent = lcs.back().order() == 1;
    data.class3 = nilpotent && lcs.size() == 4;
    if (data.class3) {
        if (auto pk = prime_power(g->order() / derived.order())) {
            if (pk->second % 2 == 0) {
                data.p = pk->first;
                data.nFromIndex = pk->second / 2;
            }
        }
    }
    return data;
}

} // namespace vos
