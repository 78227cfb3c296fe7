#include "vos/checks.hpp"

#include <algorithm>

#include "vos/errors.hpp"

namespace vos {

const char* to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skippedHypothesis: return "skipped-hypothesis";
    case CheckStatus::skippedCap: return "skipped-cap";
    }
    return "?";
}

const std::vector<std::string>& all_check_ids() {
    static const std::vector<std::string> ids = {
        "sandwich",        "elem-abelian",  "lewis-index",      "lewis-D3",
        "H1-k3",           "lem-hone",      "lem-classsize-p",  "lem-quotient-V",
        "lem-classsize-H1", "lem-char-vanish", "lem-DleE",      "lem-DiBound",
        "lem-G/K-iso",     "cor-GiVi-bound", "lem-KleD",        "cor-DleD",
        "lem-EBound",      "thm1",          "thm2a",            "thm2b",
        "thm2c",           "thm2d",         "thm3",             "macdonald-D3",
    };
    return ids;
}

const CharacterTable& GroupContext::table() {
    if (!table_) {
        CharTableOptions o;
        o.orderCap = opts.charCap;
        table_.emplace(character_table(group, o));
    }
    return *table_;
}

const H1Result& GroupContext::h1_full(unsigned k) {
    auto it = h1_.find(k);
    if (it == h1_.end()) it = h1_.emplace(k, is_H1(profile, k)).first;
    return it->second;
}

bool GroupContext::h1(unsigned k) { return h1_full(k).holds; }

const std::optional<SubgroupSet>& GroupContext::h1_witness(unsigned k) {
    return h1_full(k).witnessN;
}

GroupContext make_context(const GroupPtr& g, const CheckOptions& opts) {
    GroupContext ctx;
    ctx.group = g;
    ctx.opts = opts;
    ctx.profile = series_profile(g);
    ctx.classes = conjugacy_classes(g);
    ctx.centerSet = center(g);
    ctx.secondDerived =
        commutator_subgroup(g, ctx.profile.g_term(2), ctx.profile.g_term(2));
    ctx.camina = camina_data(g);
    return ctx;
}

namespace {

std::string ikey(unsigned i, const char* name) {
    return "i" + std::to_string(i) + "." + name;
}

std::string elem(const GroupPtr& g, Idx x) {
    return std::to_string(x) + " '" + g->element_label(x) + "'";
}

std::string describe_subgroup(const SubgroupSet& s) {
    std::string out = "subgroup of order " + std::to_string(s.order()) + " = <";
    std::vector<Idx> gens = small_generating_set(s);
    if (gens.empty()) out += "identity";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) out += ", ";
        out += elem(s.parent, gens[i]);
    }
    return out + ">";
}

// Verdict accumulator with the combining rule fail > cap > pass > skipped.
struct Acc {
    CheckRecord rec;
    bool verified = false;
    bool capped = false;
    bool failed = false;

    Acc(const GroupContext& ctx, const char* id) {
        rec.groupName = ctx.group->name();
        rec.checkId = id;
    }
    void flag(const std::string& k, bool v) { rec.hypothesisFlags[k] = v; }
    void metric(const std::string& k, std::int64_t v) { rec.metrics[k] = v; }
    void pass_index() { verified = true; }
    void fail_with(const std::string& w) {
        if (!failed) {
            failed = true;
            rec.witness = w;
        }
    }
    CheckRecord finish() {
        if (failed)
            rec.status = CheckStatus::fail;
        else if (capped)
            rec.status = CheckStatus::skippedCap;
        else if (verified)
            rec.status = CheckStatus::pass;
        else {
            rec.status = CheckStatus::skippedHypothesis;
            bool anyFalse = false;
            for (const auto& [k, v] : rec.hypothesisFlags)
                if (!v) anyFalse = true;
            if (!anyFalse) rec.hypothesisFlags["applicable-index-exists"] = false;
        }
        return std::move(rec);
    }
};

// Run one quantified sub-evaluation; a cap error downgrades the record, never
// aborts the suite.
template <typename F>
void guarded(Acc& a, F&& body) {
    try {
        body();
    } catch (const CapError&) {
        a.capped = true;
        a.rec.metrics["cap-hit"] = 1;
    }
}

Bitset image_of(const QuotientMap& q, const Bitset& src) {
    Bitset out(q.target->order());
    VOS_FOR_SET(x, src) out.set(q.apply(Idx(x)));
    return out;
}

std::optional<Idx> first_not_in(const Bitset& sub, const Bitset& sup) {
    VOS_FOR_SET(x, sub)
        if (!sup.test(x)) return Idx(x);
    return std::nullopt;
}

bool strict_below(const SeriesProfile& prof, unsigned i) {
    return prof.v_term(i).order() < prof.g_term(i).order();
}

std::int64_t section_index(const SubgroupSet& big, const SubgroupSet& small) {
    return std::int64_t(big.order() / small.order());
}

std::int64_t index_in_parent(const SubgroupSet& s) {
    return std::int64_t(s.parent->order() / s.order());
}

std::int64_t pow_int(std::int64_t p, unsigned n) {
    std::int64_t r = 1;
    while (n--) r *= p;
    return r;
}

// cl(x) == x*S as sets; S must contain the commutators [x, g].
bool class_equals_coset(GroupContext& ctx, Idx x, const SubgroupSet& s, std::string& why) {
    const ConjugacyClassData& cc = ctx.classes;
    Idx c = cc.classOf[x];
    if (cc.classSize[c] != s.order()) {
        why = "cl(" + elem(ctx.group, x) + ") has size " + std::to_string(cc.classSize[c]) +
              ", the coset has size " + std::to_string(s.order());
        return false;
    }
    VOS_FOR_SET(t, s.members) {
        Idx y = ctx.group->mul(x, Idx(t));
        if (cc.classOf[y] != c) {
            why = "coset element " + elem(ctx.group, y) + " is not conjugate to " +
                  elem(ctx.group, x);
            return false;
        }
    }
    return true;
}

// G_{i+1} <= V_i <= G_i at every index.
CheckRecord chk_sandwich(GroupContext& ctx) {
    Acc a(ctx, "sandwich");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned i = 1; i <= prof.maxIndex(); ++i) {
        const SubgroupSet& gi = prof.g_term(i);
        const SubgroupSet& vi = prof.v_term(i);
        a.metric(ikey(i, "G"), std::int64_t(gi.order()));
        a.metric(ikey(i, "V"), std::int64_t(vi.order()));
        if (auto x = first_not_in(vi.members, gi.members)) {
            a.fail_with("V_" + std::to_string(i) + " element " + elem(ctx.group, *x) +
                        " lies outside G_" + std::to_string(i));
        } else if (auto y = first_not_in(prof.g_term(i + 1).members, vi.members)) {
            a.fail_with("G_" + std::to_string(i + 1) + " element " + elem(ctx.group, *y) +
                        " lies outside V_" + std::to_string(i));
        } else {
            a.pass_index();
        }
    }
    return a.finish();
}

// When V_2 < G_2, every section G_i/V_i is elementary abelian for one prime p.
CheckRecord chk_elem_abelian(GroupContext& ctx) {
    Acc a(ctx, "elem-abelian");
    const SeriesProfile& prof = ctx.profile;
    const GroupPtr& g = ctx.group;
    bool strict2 = strict_below(prof, 2);
    a.flag("V2<G2", strict2);
    if (!strict2) return a.finish();

    unsigned p = 0;
    for (unsigned i = 1; i <= prof.maxIndex() && !p; ++i) {
        std::size_t idx = prof.g_term(i).order() / prof.v_term(i).order();
        if (idx == 1) continue;
        auto pk = prime_power(idx);
        if (!pk) {
            a.fail_with("section index |G_" + std::to_string(i) + ":V_" + std::to_string(i) +
                        "| = " + std::to_string(idx) + " is not a prime power");
            return a.finish();
        }
        p = pk->first;
    }
    a.metric("p", p);
    for (unsigned i = 1; i <= prof.maxIndex(); ++i) {
        const SubgroupSet& gi = prof.g_term(i);
        const SubgroupSet& vi = prof.v_term(i);
        std::size_t idx = gi.order() / vi.order();
        a.metric(ikey(i, "G:V"), std::int64_t(idx));
        if (idx == 1) continue;
        auto pk = prime_power(idx);
        if (!pk || pk->first != p) {
            a.fail_with("section index |G_" + std::to_string(i) + ":V_" + std::to_string(i) +
                        "| = " + std::to_string(idx) + " is not a power of p = " +
                        std::to_string(p));
            return a.finish();
        }
        VOS_FOR_SET(x, gi.members) {
            if (!vi.members.test(g->pow(Idx(x), p))) {
                a.fail_with("element " + elem(g, Idx(x)) + " of G_" + std::to_string(i) +
                            " has p-th power outside V_" + std::to_string(i));
                return a.finish();
            }
        }
        SubgroupSet comm = commutator_subgroup(g, gi, gi);
        if (auto x = first_not_in(comm.members, vi.members)) {
            a.fail_with("commutator " + elem(g, *x) + " of G_" + std::to_string(i) +
                        " lies outside V_" + std::to_string(i));
            return a.finish();
        }
        a.pass_index();
    }
    return a.finish();
}

// When V_3 < G_3: |G:V_1| = |G':V_2|^2 = p^(2n).
CheckRecord chk_lewis_index(GroupContext& ctx) {
    Acc a(ctx, "lewis-index");
    const SeriesProfile& prof = ctx.profile;
    bool strict3 = strict_below(prof, 3);
    a.flag("V3<G3", strict3);
    if (!strict3) return a.finish();

    std::int64_t q1 = section_index(prof.g_term(1), prof.v_term(1));
    std::int64_t q2 = section_index(prof.g_term(2), prof.v_term(2));
    a.metric("G:V1", q1);
    a.metric("G2:V2", q2);
    if (q1 != q2 * q2) {
        a.fail_with("|G:V_1| = " + std::to_string(q1) + " differs from |G':V_2|^2 = " +
                    std::to_string(q2 * q2));
        return a.finish();
    }
    auto pk = prime_power(std::size_t(q1));
    if (!pk || pk->second % 2 != 0) {
        a.fail_with("|G:V_1| = " + std::to_string(q1) + " is not an even power of a prime");
        return a.finish();
    }
    a.metric("p", pk->first);
    a.metric("n", pk->second / 2);
    a.pass_index();
    return a.finish();
}

// When V_3 < G_3: either |G:D_3| = p^n or D_3 = V_1.
CheckRecord chk_lewis_d3(GroupContext& ctx) {
    Acc a(ctx, "lewis-D3");
    const SeriesProfile& prof = ctx.profile;
    bool strict3 = strict_below(prof, 3);
    a.flag("V3<G3", strict3);
    if (!strict3) return a.finish();

    std::int64_t q1 = section_index(prof.g_term(1), prof.v_term(1));
    auto pk = prime_power(std::size_t(q1));
    if (!pk || pk->second % 2 != 0) {
        a.fail_with("|G:V_1| = " + std::to_string(q1) + " is not an even power of a prime");
        return a.finish();
    }
    std::int64_t pn = pow_int(pk->first, pk->second / 2);
    const SubgroupSet& d3 = prof.D.at(3);
    std::int64_t gd3 = index_in_parent(d3);
    a.metric("G:D3", gd3);
    a.metric("p", pk->first);
    a.metric("n", pk->second / 2);
    bool byIndex = gd3 == pn;
    bool byEquality = d3 == prof.v_term(1);
    a.metric("branch-index", byIndex ? 1 : 0);
    a.metric("branch-D3=V1", byEquality ? 1 : 0);
    if (byIndex || byEquality)
        a.pass_index();
    else
        a.fail_with("|G:D_3| = " + std::to_string(gd3) + " != p^n = " + std::to_string(pn) +
                    " and D_3 (order " + std::to_string(d3.order()) +
                    ") differs from V_1 (order " + std::to_string(prof.v_term(1).order()) + ")");
    return a.finish();
}

// G_3 has the section-centralizing property unconditionally.
CheckRecord chk_h1_k3(GroupContext& ctx) {
    Acc a(ctx, "H1-k3");
    a.metric("k", 3);
    guarded(a, [&] {
        if (ctx.h1(3))
            a.pass_index();
        else
            a.fail_with("failing N: " + describe_subgroup(*ctx.h1_witness(3)));
    });
    return a.finish();
}

// If one enumerated N between V_k and G_k has V_{k-1}/N = (G_{k-1}/N) cap
// Z(G/N), then V_{k-1} = G_{k-1} cap Y_k globally.
CheckRecord chk_lem_hone(GroupContext& ctx) {
    Acc a(ctx, "lem-hone");
    const SeriesProfile& prof = ctx.profile;
    const GroupPtr& g = ctx.group;
    for (unsigned k = 3; k <= prof.maxIndex(); ++k) {
        guarded(a, [&] {
            bool strict = strict_below(prof, k);
            a.flag(ikey(k, "Vk<Gk"), strict);
            if (!strict) return;
            std::vector<SubgroupSet> sections = invariant_intermediate_subgroups(
                g, prof.v_term(k), prof.g_term(k), ctx.opts.enumeration);
            a.metric(ikey(k, "sections"), std::int64_t(sections.size()));
            bool premise = false;
            for (const SubgroupSet& n : sections) {
                QuotientMap q = quotient(g, n.members, ctx.opts.build);
                Bitset imgV = image_of(q, prof.v_term(k - 1).members);
                Bitset imgGZ = image_of(q, prof.g_term(k - 1).members);
                imgGZ &= center(q.target).members;
                if (imgV == imgGZ) {
                    premise = true;
                    break;
                }
            }
            a.flag(ikey(k, "exists-central-N"), premise);
            if (!premise) return;
            SubgroupSet rhs{g, prof.g_term(k - 1).members & prof.Y.at(k).members};
            a.metric(ikey(k, "Vk-1"), std::int64_t(prof.v_term(k - 1).order()));
            a.metric(ikey(k, "Gk-1&Yk"), std::int64_t(rhs.order()));
            if (prof.v_term(k - 1) == rhs)
                a.pass_index();
            else
                a.fail_with("at k = " + std::to_string(k) + ": V_" + std::to_string(k - 1) +
                            " has order " + std::to_string(prof.v_term(k - 1).order()) +
                            " but G_" + std::to_string(k - 1) + " cap Y_" + std::to_string(k) +
                            " has order " + std::to_string(rhs.order()));
        });
    }
    return a.finish();
}

// With V_i = 1 and |G_i| = p: cl(x) = xG_i for every x in G_{i-1} outside Z(G).
CheckRecord chk_lem_classsize_p(GroupContext& ctx) {
    Acc a(ctx, "lem-classsize-p");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned i = 2; i <= prof.maxIndex(); ++i) {
        guarded(a, [&] {
            bool vTrivial = prof.v_term(i).order() == 1;
            a.flag(ikey(i, "Vi=1"), vTrivial);
            auto pk = prime_power(prof.g_term(i).order());
            bool primeOrder = pk && pk->second == 1;
            a.flag(ikey(i, "|Gi|=p"), primeOrder);
            if (!vTrivial || !primeOrder) return;
            std::int64_t checked = 0;
            VOS_FOR_SET(x, prof.g_term(i - 1).members) {
                if (ctx.centerSet.members.test(x)) continue;
                ++checked;
                std::string why;
                if (!class_equals_coset(ctx, Idx(x), prof.g_term(i), why)) {
                    a.fail_with("at i = " + std::to_string(i) + ": " + why);
                    return;
                }
            }
            a.metric(ikey(i, "checked"), checked);
            a.pass_index();
        });
    }
    return a.finish();
}

// When V_k < G_k: the V-series of G/N recomputed from scratch matches the
// image of the V-series, at indices 2..k, for every enumerated normal N < G_k.
CheckRecord chk_lem_quotient_v(GroupContext& ctx) {
    Acc a(ctx, "lem-quotient-V");
    const SeriesProfile& prof = ctx.profile;
    const GroupPtr& g = ctx.group;
    for (unsigned k = 3; k <= prof.maxIndex(); ++k) {
        guarded(a, [&] {
            bool strict = strict_below(prof, k);
            a.flag(ikey(k, "Vk<Gk"), strict);
            if (!strict) return;
            std::vector<SubgroupSet> sections = invariant_intermediate_subgroups(
                g, prof.v_term(k), prof.g_term(k), ctx.opts.enumeration);
            a.metric(ikey(k, "sections"), std::int64_t(sections.size()));
            for (const SubgroupSet& n : sections) {
                QuotientMap q = quotient(g, n.members, ctx.opts.build);
                std::vector<SubgroupSet> qSeries = v_series(q.target);
                auto q_term = [&](unsigned i) -> const SubgroupSet& {
                    return qSeries[std::min<std::size_t>(i, qSeries.size()) - 1];
                };
                for (unsigned i = 2; i <= k; ++i) {
                    Bitset img = image_of(q, prof.v_term(i).members);
                    if (q_term(i).members != img) {
                        a.fail_with("at k = " + std::to_string(k) + ", N = " +
                                    describe_subgroup(n) + ": V_" + std::to_string(i) +
                                    "(G/N) has order " + std::to_string(q_term(i).order()) +
                                    " but the image of V_" + std::to_string(i) +
                                    " has order " + std::to_string(img.count()));
                        return;
                    }
                }
            }
            a.pass_index();
        });
    }
    return a.finish();
}

// With V_i = 1 and the H_1 property: cl(x) = xG_i for x in G_{i-1} \ V_{i-1}.
CheckRecord chk_lem_classsize_h1(GroupContext& ctx) {
    Acc a(ctx, "lem-classsize-H1");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned i = 3; i <= prof.maxIndex(); ++i) {
        guarded(a, [&] {
            bool vTrivial = prof.v_term(i).order() == 1;
            a.flag(ikey(i, "Vi=1"), vTrivial);
            if (!vTrivial) return;
            bool h = ctx.h1(i);
            a.flag(ikey(i, "H1"), h);
            if (!h) return;
            std::int64_t checked = 0;
            VOS_FOR_SET(x, prof.g_term(i - 1).members) {
                if (prof.v_term(i - 1).members.test(x)) continue;
                ++checked;
                std::string why;
                if (!class_equals_coset(ctx, Idx(x), prof.g_term(i), why)) {
                    a.fail_with("at i = " + std::to_string(i) + ": " + why);
                    return;
                }
            }
            a.metric(ikey(i, "checked"), checked);
            a.pass_index();
        });
    }
    return a.finish();
}

// With V_k = 1 and the H_1 property: every irreducible character whose kernel
// misses G_k vanishes on all of G_{k-1} \ V_{k-1}.
CheckRecord chk_lem_char_vanish(GroupContext& ctx) {
    Acc a(ctx, "lem-char-vanish");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned k = 3; k <= prof.maxIndex(); ++k) {
        guarded(a, [&] {
            bool vTrivial = prof.v_term(k).order() == 1;
            a.flag(ikey(k, "Vk=1"), vTrivial);
            if (!vTrivial) return;
            bool h = ctx.h1(k);
            a.flag(ikey(k, "H1"), h);
            if (!h) return;
            const CharacterTable& t = ctx.table();
            std::vector<std::size_t> rows = irr_over(t, prof.g_term(k));
            a.metric(ikey(k, "rows"), std::int64_t(rows.size()));
            std::vector<char> live(t.classes.count(), 0);
            VOS_FOR_SET(x, prof.g_term(k - 1).members)
                if (!prof.v_term(k - 1).members.test(x)) live[t.classes.classOf[x]] = 1;
            std::int64_t liveCount = 0;
            for (char c : live) liveCount += c;
            a.metric(ikey(k, "classes"), liveCount);
            for (std::size_t r : rows) {
                for (std::size_t c = 0; c < t.classes.count(); ++c) {
                    if (!live[c]) continue;
                    if (!t.rows[r].values[c].zero()) {
                        a.fail_with("at k = " + std::to_string(k) + ": character of degree " +
                                    std::to_string(t.rows[r].degree) +
                                    " is nonzero on the class of " +
                                    elem(ctx.group, t.classes.representative[c]));
                        return;
                    }
                }
            }
            a.pass_index();
        });
    }
    return a.finish();
}

// With V_i < G_i, i >= 4, and G'/V_i abelian: D_i <= E_i.
CheckRecord chk_lem_dle(GroupContext& ctx) {
    Acc a(ctx, "lem-DleE");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned i = 4; i <= prof.maxIndex(); ++i) {
        guarded(a, [&] {
            bool strict = strict_below(prof, i);
            a.flag(ikey(i, "Vi<Gi"), strict);
            bool abel = ctx.secondDerived.members.subset_of(prof.v_term(i).members);
            a.flag(ikey(i, "G'/Vi-abelian"), abel);
            if (!strict || !abel) return;
            const SubgroupSet& d = prof.D.at(i);
            const SubgroupSet& e = prof.E.at(i);
            a.metric(ikey(i, "D"), std::int64_t(d.order()));
            a.metric(ikey(i, "E"), std::int64_t(e.order()));
            if (auto x = first_not_in(d.members, e.members))
                a.fail_with("at i = " + std::to_string(i) + ": D_i element " +
                            elem(ctx.group, *x) + " lies outside E_i");
            else
                a.pass_index();
        });
    }
    return a.finish();
}

// With V_i = 1 and |G_i| = p: |G:D_i| <= |G_{i-1} : G_{i-1} cap Y_i|.
CheckRecord chk_lem_dibound(GroupContext& ctx) {
    Acc a(ctx, "lem-DiBound");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned i = 3; i <= prof.maxIndex(); ++i) {
        guarded(a, [&] {
            bool vTrivial = prof.v_term(i).order() == 1;
            a.flag(ikey(i, "Vi=1"), vTrivial);
            auto pk = prime_power(prof.g_term(i).order());
            bool primeOrder = pk && pk->second == 1;
            a.flag(ikey(i, "|Gi|=p"), primeOrder);
            if (!vTrivial || !primeOrder) return;
            std::int64_t lhs = index_in_parent(prof.D.at(i));
            Bitset inter = prof.g_term(i - 1).members & prof.Y.at(i).members;
            std::int64_t rhs = std::int64_t(prof.g_term(i - 1).order() / inter.count());
            a.metric(ikey(i, "G:D"), lhs);
            a.metric(ikey(i, "Gi-1:Gi-1&Y"), rhs);
            if (lhs <= rhs)
                a.pass_index();
            else
                a.fail_with("at i = " + std::to_string(i) + ": |G:D_i| = " + std::to_string(lhs) +
                            " exceeds |G_{i-1}:G_{i-1} cap Y_i| = " + std::to_string(rhs));
        });
    }
    return a.finish();
}

// With the H_1 property: for every a in G_{i-1} \ V_{i-1}, the kernel
// K = {g : [g,a] in V_i} satisfies G/K isomorphic to G_i/V_i (both abelian).
CheckRecord chk_lem_gk_iso(GroupContext& ctx) {
    Acc a(ctx, "lem-G/K-iso");
    const SeriesProfile& prof = ctx.profile;
    const GroupPtr& g = ctx.group;
    for (unsigned i = 3; i <= prof.maxIndex(); ++i) {
        guarded(a, [&] {
            bool h = ctx.h1(i);
            a.flag(ikey(i, "H1"), h);
            if (!h) return;
            const SubgroupSet& vi = prof.v_term(i);
            const SubgroupSet& gi = prof.g_term(i);
            std::int64_t target = section_index(gi, vi);
            a.metric(ikey(i, "Gi:Vi"), target);
            QuotientMap qv = quotient(g, vi.members, ctx.opts.build);
            SubgroupSet giImage{qv.target, image_of(qv, gi.members)};
            std::vector<unsigned> wantInv = abelian_invariants(giImage);
            std::int64_t count = 0;
            VOS_FOR_SET(ax, prof.g_term(i - 1).members) {
                if (prof.v_term(i - 1).members.test(ax)) continue;
                Idx aa = Idx(ax);
                ++count;
                Bitset k(g->order());
                for (Idx x = 0; x < g->order(); ++x)
                    if (vi.members.test(g->comm(x, aa))) k.set(x);
                if (std::int64_t(g->order() / k.count()) != target) {
                    a.fail_with("at i = " + std::to_string(i) + ", a = " + elem(g, aa) +
                                ": |G:K| = " + std::to_string(g->order() / k.count()) +
                                " but |G_i:V_i| = " + std::to_string(target));
                    return;
                }
                SubgroupSet ks{g, k};
                if (!is_normal(g, ks))
                    throw InternalError("commutation kernel is not normal");
                QuotientMap qk = quotient(g, k, ctx.opts.build);
                std::vector<unsigned> gotInv;
                try {
                    gotInv = abelian_invariants(full_subgroup(qk.target));
                } catch (const ValidationError&) {
                    a.fail_with("at i = " + std::to_string(i) + ", a = " + elem(g, aa) +
                                ": G/K is not abelian");
                    return;
                }
                if (gotInv != wantInv) {
                    a.fail_with("at i = " + std::to_string(i) + ", a = " + elem(g, aa) +
                                ": G/K and G_i/V_i have different abelian invariants");
                    return;
                }
            }
            a.metric(ikey(i, "witnesses"), count);
            a.pass_index();
        });
    }
    return a.finish();
}

// With the H_1 property: |G_i:V_i| <= |G:D_i|.
CheckRecord chk_cor_givi_bound(GroupContext& ctx) {
    Acc a(ctx, "cor-GiVi-bound");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned i = 3; i <= prof.maxIndex(); ++i) {
        guarded(a, [&] {
            bool h = ctx.h1(i);
            a.flag(ikey(i, "H1"), h);
            if (!h) return;
            std::int64_t lhs = section_index(prof.g_term(i), prof.v_term(i));
            std::int64_t rhs = index_in_parent(prof.D.at(i));
            a.metric(ikey(i, "Gi:Vi"), lhs);
            a.metric(ikey(i, "G:D"), rhs);
            if (lhs <= rhs)
                a.pass_index();
            else
                a.fail_with("at i = " + std::to_string(i) + ": |G_i:V_i| = " +
                            std::to_string(lhs) + " exceeds |G:D_i| = " + std::to_string(rhs));
        });
    }
    return a.finish();
}

// With V_i < G_i, G'/V_i abelian, and H_1 at i-1, i >= 4: for every
// a in G_{i-2} \ V_{i-2}, K = {g : [g,a] in V_{i-1}} lies inside D_i.
CheckRecord chk_lem_kled(GroupContext& ctx) {
    Acc a(ctx, "lem-KleD");
    const SeriesProfile& prof = ctx.profile;
    const GroupPtr& g = ctx.group;
    for (unsigned i = 4; i <= prof.maxIndex(); ++i) {
        guarded(a, [&] {
            bool strict = strict_below(prof, i);
            a.flag(ikey(i, "Vi<Gi"), strict);
            bool abel = ctx.secondDerived.members.subset_of(prof.v_term(i).members);
            a.flag(ikey(i, "G'/Vi-abelian"), abel);
            if (!strict || !abel) return;
            bool hPrev = ctx.h1(i - 1);
            a.flag(ikey(i, "H1(i-1)"), hPrev);
            if (!hPrev) return;
            const SubgroupSet& vim1 = prof.v_term(i - 1);
            const SubgroupSet& d = prof.D.at(i);
            std::int64_t count = 0;
            VOS_FOR_SET(ax, prof.g_term(i - 2).members) {
                if (prof.v_term(i - 2).members.test(ax)) continue;
                Idx aa = Idx(ax);
                ++count;
                for (Idx x = 0; x < g->order(); ++x) {
                    if (!vim1.members.test(g->comm(x, aa))) continue;
                    if (!d.members.test(x)) {
                        a.fail_with("at i = " + std::to_string(i) + ", a = " + elem(g, aa) +
                                    ": K element " + elem(g, x) + " lies outside D_i");
                        return;
                    }
                }
            }
            a.metric(ikey(i, "witnesses"), count);
            a.pass_index();
        });
    }
    return a.finish();
}

// Same hypotheses: D_{i-1} <= D_i.
CheckRecord chk_cor_dled(GroupContext& ctx) {
    Acc a(ctx, "cor-DleD");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned i = 4; i <= prof.maxIndex(); ++i) {
        guarded(a, [&] {
            bool strict = strict_below(prof, i);
            a.flag(ikey(i, "Vi<Gi"), strict);
            bool abel = ctx.secondDerived.members.subset_of(prof.v_term(i).members);
            a.flag(ikey(i, "G'/Vi-abelian"), abel);
            if (!strict || !abel) return;
            bool hPrev = ctx.h1(i - 1);
            a.flag(ikey(i, "H1(i-1)"), hPrev);
            if (!hPrev) return;
            const SubgroupSet& prev = prof.D.at(i - 1);
            const SubgroupSet& cur = prof.D.at(i);
            a.metric(ikey(i, "D(i-1)"), std::int64_t(prev.order()));
            a.metric(ikey(i, "D(i)"), std::int64_t(cur.order()));
            if (auto x = first_not_in(prev.members, cur.members))
                a.fail_with("at i = " + std::to_string(i) + ": D_{i-1} element " +
                            elem(ctx.group, *x) + " lies outside D_i");
            else
                a.pass_index();
        });
    }
    return a.finish();
}

// With V_i < G_i and H_1 at i-1: |G:E_i| >= |G_{i-1} : G_{i-1} cap Y_i|.
CheckRecord chk_lem_ebound(GroupContext& ctx) {
    Acc a(ctx, "lem-EBound");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned i = 4; i <= prof.maxIndex(); ++i) {
        guarded(a, [&] {
            bool strict = strict_below(prof, i);
            a.flag(ikey(i, "Vi<Gi"), strict);
            if (!strict) return;
            bool hPrev = ctx.h1(i - 1);
            a.flag(ikey(i, "H1(i-1)"), hPrev);
            if (!hPrev) return;
            std::int64_t lhs = index_in_parent(prof.E.at(i));
            Bitset inter = prof.g_term(i - 1).members & prof.Y.at(i).members;
            std::int64_t rhs = std::int64_t(prof.g_term(i - 1).order() / inter.count());
            a.metric(ikey(i, "G:E"), lhs);
            a.metric(ikey(i, "Gi-1:Gi-1&Y"), rhs);
            if (lhs >= rhs)
                a.pass_index();
            else
                a.fail_with("at i = " + std::to_string(i) + ": |G:E_i| = " + std::to_string(lhs) +
                            " is below |G_{i-1}:G_{i-1} cap Y_i| = " + std::to_string(rhs));
        });
    }
    return a.finish();
}

// With V_k < G_k, G'/V_k abelian, and H_1 at every index 3..k: D_k = D_3.
CheckRecord chk_thm1(GroupContext& ctx) {
    Acc a(ctx, "thm1");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned k = 3; k <= prof.maxIndex(); ++k) {
        guarded(a, [&] {
            bool strict = strict_below(prof, k);
            a.flag(ikey(k, "Vk<Gk"), strict);
            bool abel = ctx.secondDerived.members.subset_of(prof.v_term(k).members);
            a.flag(ikey(k, "G'/Vk-abelian"), abel);
            if (!strict || !abel) return;
            bool all = true;
            for (unsigned i = 3; i <= k && all; ++i) all = ctx.h1(i);
            a.flag(ikey(k, "H1(3..k)"), all);
            if (!all) return;
            a.metric(ikey(k, "Dk"), std::int64_t(prof.D.at(k).order()));
            a.metric("D3", std::int64_t(prof.D.at(3).order()));
            if (prof.D.at(k) == prof.D.at(3))
                a.pass_index();
            else
                a.fail_with("at k = " + std::to_string(k) + ": D_k has order " +
                            std::to_string(prof.D.at(k).order()) + " but D_3 has order " +
                            std::to_string(prof.D.at(3).order()));
        });
    }
    return a.finish();
}

bool thm2_hypotheses(GroupContext& ctx, Acc& a, unsigned k) {
    const SeriesProfile& prof = ctx.profile;
    bool strict = strict_below(prof, k);
    a.flag(ikey(k, "Vk<Gk"), strict);
    bool abel = ctx.secondDerived.members.subset_of(prof.v_term(k).members);
    a.flag(ikey(k, "G'/Vk-abelian"), abel);
    return strict && abel;
}

// Under the Theorem 2 hypotheses at k >= 4: |G_{k-1}:V_{k-1}| = |G:D_3|.
CheckRecord chk_thm2a(GroupContext& ctx) {
    Acc a(ctx, "thm2a");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned k = 4; k <= prof.maxIndex(); ++k) {
        guarded(a, [&] {
            if (!thm2_hypotheses(ctx, a, k)) return;
            std::int64_t lhs = section_index(prof.g_term(k - 1), prof.v_term(k - 1));
            std::int64_t rhs = index_in_parent(prof.D.at(3));
            a.metric(ikey(k, "Gk-1:Vk-1"), lhs);
            a.metric("G:D3", rhs);
            if (lhs == rhs)
                a.pass_index();
            else
                a.fail_with("at k = " + std::to_string(k) + ": |G_{k-1}:V_{k-1}| = " +
                            std::to_string(lhs) + " differs from |G:D_3| = " +
                            std::to_string(rhs));
        });
    }
    return a.finish();
}

// Under the Theorem 2 hypotheses: D_k = D_3.
CheckRecord chk_thm2b(GroupContext& ctx) {
    Acc a(ctx, "thm2b");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned k = 3; k <= prof.maxIndex(); ++k) {
        guarded(a, [&] {
            if (!thm2_hypotheses(ctx, a, k)) return;
            a.metric(ikey(k, "Dk"), std::int64_t(prof.D.at(k).order()));
            a.metric("D3", std::int64_t(prof.D.at(3).order()));
            if (prof.D.at(k) == prof.D.at(3))
                a.pass_index();
            else
                a.fail_with("at k = " + std::to_string(k) + ": D_k has order " +
                            std::to_string(prof.D.at(k).order()) + " but D_3 has order " +
                            std::to_string(prof.D.at(3).order()));
        });
    }
    return a.finish();
}

// Under the Theorem 2 hypotheses: G_k has the H_1 property.
CheckRecord chk_thm2c(GroupContext& ctx) {
    Acc a(ctx, "thm2c");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned k = 3; k <= prof.maxIndex(); ++k) {
        guarded(a, [&] {
            if (!thm2_hypotheses(ctx, a, k)) return;
            if (ctx.h1(k))
                a.pass_index();
            else
                a.fail_with("at k = " + std::to_string(k) +
                            ": failing N: " + describe_subgroup(*ctx.h1_witness(k)));
        });
    }
    return a.finish();
}

// Under the Theorem 2 hypotheses: |G_k:V_k| <= |G:D_3|.
CheckRecord chk_thm2d(GroupContext& ctx) {
    Acc a(ctx, "thm2d");
    const SeriesProfile& prof = ctx.profile;
    for (unsigned k = 3; k <= prof.maxIndex(); ++k) {
        guarded(a, [&] {
            if (!thm2_hypotheses(ctx, a, k)) return;
            std::int64_t lhs = section_index(prof.g_term(k), prof.v_term(k));
            std::int64_t rhs = index_in_parent(prof.D.at(3));
            a.metric(ikey(k, "Gk:Vk"), lhs);
            a.metric("G:D3", rhs);
            if (lhs <= rhs)
                a.pass_index();
            else
                a.fail_with("at k = " + std::to_string(k) + ": |G_k:V_k| = " +
                            std::to_string(lhs) + " exceeds |G:D_3| = " + std::to_string(rhs));
        });
    }
    return a.finish();
}

// Helper shared by the two class-3 Camina checks: derive p and n from
// |G:G'| = p^(2n), failing the record when the index has the wrong shape.
std::optional<std::pair<std::int64_t, unsigned>> camina_pn(GroupContext& ctx, Acc& a) {
    const SeriesProfile& prof = ctx.profile;
    std::size_t idx = ctx.group->order() / prof.g_term(2).order();
    a.metric("G:G'", std::int64_t(idx));
    auto pk = prime_power(idx);
    if (!pk || pk->second % 2 != 0 || pk->second == 0) {
        a.fail_with("|G:G'| = " + std::to_string(idx) + " is not an even power of a prime");
        return std::nullopt;
    }
    a.metric("p", pk->first);
    a.metric("n", pk->second / 2);
    return std::make_pair(std::int64_t(pk->first), pk->second / 2);
}

// Camina groups of nilpotence class 3 with |G:G'| = p^(2n) have |G_3| <= p^n.
CheckRecord chk_thm3(GroupContext& ctx) {
    Acc a(ctx, "thm3");
    a.flag("camina", ctx.camina.isCamina);
    a.flag("class3", ctx.camina.class3);
    if (!ctx.camina.isCamina || !ctx.camina.class3) return a.finish();
    auto pn = camina_pn(ctx, a);
    if (!pn) return a.finish();
    std::int64_t bound = pow_int(pn->first, pn->second);
    std::int64_t g3 = std::int64_t(ctx.profile.g_term(3).order());
    a.metric("G3", g3);
    if (g3 <= bound)
        a.pass_index();
    else
        a.fail_with("|G_3| = " + std::to_string(g3) + " exceeds p^n = " + std::to_string(bound));
    return a.finish();
}

// Same class-3 Camina setting: |G:D_3| = p^n exactly.
CheckRecord chk_macdonald_d3(GroupContext& ctx) {
    Acc a(ctx, "macdonald-D3");
    a.flag("camina", ctx.camina.isCamina);
    a.flag("class3", ctx.camina.class3);
    if (!ctx.camina.isCamina || !ctx.camina.class3) return a.finish();
    auto pn = camina_pn(ctx, a);
    if (!pn) return a.finish();
    std::int64_t want = pow_int(pn->first, pn->second);
    std::int64_t got = index_in_parent(ctx.profile.D.at(3));
    a.metric("G:D3", got);
    if (got == want)
        a.pass_index();
    else
        a.fail_with("|G:D_3| = " + std::to_string(got) + " differs from p^n = " +
                    std::to_string(want));
    return a.finish();
}

using CheckFn = CheckRecord (*)(GroupContext&);

const std::map<std::string, CheckFn>& check_table() {
    static const std::map<std::string, CheckFn> table = {
        {"sandwich", chk_sandwich},
        {"elem-abelian", chk_elem_abelian},
        {"lewis-index", chk_lewis_index},
        {"lewis-D3", chk_lewis_d3},
        {"H1-k3", chk_h1_k3},
        {"lem-hone", chk_lem_hone},
        {"lem-classsize-p", chk_lem_classsize_p},
        {"lem-quotient-V", chk_lem_quotient_v},
        {"lem-classsize-H1", chk_lem_classsize_h1},
        {"lem-char-vanish", chk_lem_char_vanish},
        {"lem-DleE", chk_lem_dle},
        {"lem-DiBound", chk_lem_dibound},
        {"lem-G/K-iso", chk_lem_gk_iso},
        {"cor-GiVi-bound", chk_cor_givi_bound},
        {"lem-KleD", chk_lem_kled},
        {"cor-DleD", chk_cor_dled},
        {"lem-EBound", chk_lem_ebound},
        {"thm1", chk_thm1},
        {"thm2a", chk_thm2a},
        {"thm2b", chk_thm2b},
        {"thm2c", chk_thm2c},
        {"thm2d", chk_thm2d},
        {"thm3", chk_thm3},
        {"macdonald-D3", chk_macdonald_d3},
    };
    return table;
}

} // namespace

CheckRecord run_check(GroupContext& ctx, const std::string& checkId) {
    auto it = check_table().find(checkId);
    if (it == check_table().end()) throw ValidationError("unknown checkId: " + checkId);
    return it->second(ctx);
}

std::vector<CheckRecord> run_suite(GroupContext& ctx, const std::vector<std::string>& suite) {
    std::vector<std::string> ids = suite;
    if (ids.empty()) ids = all_check_ids();
    for (const std::string& id : ids)
        if (!check_table().count(id)) throw ValidationError("unknown checkId: " + id);
    std::vector<CheckRecord> out;
    out.reserve(ids.size());
    // canonical order regardless of how the selection was spelled
    for (const std::string& id : all_check_ids())
        if (std::find(ids.begin(), ids.end(), id) != ids.end())
            out.push_back(run_check(ctx, id));
    return out;
}

std::vector<CheckRecord> run_suite(const GroupPtr& g, const std::vector<std::string>& suite,
                                   const CheckOptions& opts) {
    GroupContext ctx = make_context(g, opts);
    return run_suite(ctx, suite);
}

} // namespace vos
