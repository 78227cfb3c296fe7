#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "vos/corpus.hpp"
#include "vos/series.hpp"

using namespace vos;

namespace {

GroupPtr s3() {
    return build_from_permutations("S3", 3, {{1, 2, 0}, {1, 0, 2}});
}

std::vector<std::size_t> orders(const std::vector<SubgroupSet>& terms) {
    std::vector<std::size_t> out;
    for (const auto& t : terms) out.push_back(t.order());
    return out;
}

} // namespace

TEST_CASE("lower central series of standard examples") {
    CHECK(orders(lower_central_series(build_cyclic(6))) == std::vector<std::size_t>{6, 1});
    CHECK(orders(lower_central_series(build_quaternion(8))) == std::vector<std::size_t>{8, 2, 1});
    CHECK(orders(lower_central_series(build_dihedral(8))) == std::vector<std::size_t>{8, 2, 1});
    CHECK(orders(lower_central_series(build_dihedral(16))) ==
          std::vector<std::size_t>{16, 4, 2, 1});
    CHECK(orders(lower_central_series(build_unitriangular(4, 2))) ==
          std::vector<std::size_t>{64, 8, 2, 1});
    CHECK(orders(lower_central_series(build_unitriangular(5, 2))) ==
          std::vector<std::size_t>{1024, 64, 8, 2, 1});
    CHECK(orders(lower_central_series(build_unitriangular(4, 3))) ==
          std::vector<std::size_t>{729, 27, 3, 1});
    // Non-nilpotent: the repeated term is appended once, then the list stops.
    CHECK(orders(lower_central_series(s3())) == std::vector<std::size_t>{6, 3, 3});
}

TEST_CASE("vanishing-off subgroups of standard examples") {
    CHECK(vanishing_off_subgroup(build_cyclic(6)).order() == 1);
    CHECK(vanishing_off_subgroup(build_abelian({2, 2})).order() == 1);
    auto g = s3();
    SubgroupSet v = vanishing_off_subgroup(g);
    CHECK(v.order() == 3);
    auto q = build_quaternion(8);
    CHECK(vanishing_off_subgroup(q) == center(q));
    auto d = build_dihedral(8);
    CHECK(vanishing_off_subgroup(d) == center(d));
    auto es = build_extraspecial(3, 3);
    CHECK(vanishing_off_subgroup(es) == center(es));
    // For these unitriangular groups every nonlinear character is nonzero
    // somewhere on every class, so V(G) is the whole group.
    CHECK(vanishing_off_subgroup(build_unitriangular(4, 2)).order() == 64);
    CHECK(vanishing_off_subgroup(build_unitriangular(5, 2)).order() == 1024);
}

TEST_CASE("v-series of standard examples") {
    CHECK(orders(v_series(build_cyclic(6))) == std::vector<std::size_t>{1});
    CHECK(orders(v_series(build_quaternion(8))) == std::vector<std::size_t>{2, 1});
    CHECK(orders(v_series(s3())) == std::vector<std::size_t>{3, 3});
    CHECK(orders(v_series(build_builtin_family("utsub", {32}))) ==
          std::vector<std::size_t>{8, 2, 1});
    CHECK(orders(v_series(build_builtin_family("utsub", {256}))) ==
          std::vector<std::size_t>{64, 8, 2, 1});
}

TEST_CASE("series profile term accessors stabilize") {
    SeriesProfile p = series_profile(build_quaternion(8));
    CHECK(p.maxIndex() == 3);
    CHECK(p.nilpotent);
    CHECK(p.nilpotenceClass == 2);
    CHECK(p.g_term(1).order() == 8);
    CHECK(p.g_term(3).order() == 1);
    CHECK(p.g_term(9).order() == 1);  // past the end: final term
    CHECK(p.v_term(1).order() == 2);
    CHECK(p.v_term(2).order() == 1);
    CHECK(p.v_term(7).order() == 1);
    CHECK(p.p == 2u);

    SeriesProfile s = series_profile(s3());
    CHECK_FALSE(s.nilpotent);
    CHECK(s.v_term(5).order() == 3);
}

TEST_CASE("profile section data") {
    SeriesProfile w = series_profile(build_builtin_family("utsub", {32}));
    CHECK(w.sectionP == 2u);
    CHECK(w.n == 1u); // |G : V_1| = 4 = 2^2
    SeriesProfile t = series_profile(build_builtin_family("utsub", {243}));
    CHECK(t.sectionP == 3u);
    CHECK(t.n == 1u);
    // V(G) = G leaves no section prime.
    SeriesProfile u = series_profile(build_unitriangular(4, 2));
    CHECK_FALSE(u.sectionP.has_value());
    // |S3 : V_1| = 2 is an odd power, so no n.
    SeriesProfile s = series_profile(s3());
    CHECK(s.sectionP == 2u);
    CHECK_FALSE(s.n.has_value());
}

TEST_CASE("series subgroups at index three") {
    auto q = build_quaternion(8);
    SeriesSubgroups sub = series_subgroups(q, 3);
    // V_3 = 1, so Y_3 is the center and D_3 centralizes G_2 = Z(G).
    CHECK(sub.Y == center(q));
    CHECK(sub.D.order() == 8);
    CHECK_FALSE(sub.E.has_value());
    CHECK_THROWS_AS(series_subgroups(q, 2), ValidationError);
    CHECK_THROWS_AS(series_subgroups(q, 4), ValidationError);
    CHECK_THROWS_AS(series_subgroups(build_cyclic(4), 3), ValidationError);
    CHECK_THROWS_WITH_AS(series_subgroups(q, 2), doctest::Contains("index beyond class"),
                         ValidationError);
}

TEST_CASE("series subgroups at index four carry the extra term") {
    auto g = build_builtin_family("utsub", {256});
    SeriesSubgroups sub = series_subgroups(g, 4);
    REQUIRE(sub.E.has_value());
    SeriesProfile p = series_profile(g);
    CHECK(sub.Y == p.Y.at(4));
    CHECK(sub.D == p.D.at(4));
    CHECK(*sub.E == p.E.at(4));
}

TEST_CASE("profile subgroup maps cover exactly the defined indices") {
    SeriesProfile q = series_profile(build_quaternion(8));
    CHECK(q.Y.size() == 1);
    CHECK(q.D.size() == 1);
    CHECK(q.E.empty());
    SeriesProfile w = series_profile(build_builtin_family("utsub", {256}));
    REQUIRE(w.maxIndex() == 5);
    CHECK(w.Y.size() == 3); // i = 3, 4, 5
    CHECK(w.D.size() == 3);
    CHECK(w.E.size() == 2); // i = 4, 5
    for (unsigned i = 3; i <= 5; ++i) {
        CHECK(w.v_term(i).subset_of(w.Y.at(i)));
        CHECK(w.v_term(i).subset_of(w.D.at(i)));
    }
}

TEST_CASE("when the v-term is trivial the series subgroups collapse to centralizers") {
    for (const GroupPtr& g : {build_quaternion(8), build_builtin_family("utsub", {32})}) {
        SeriesProfile p = series_profile(g);
        for (unsigned i = 3; i <= p.maxIndex(); ++i) {
            if (p.v_term(i).order() != 1) continue;
            CHECK(p.Y.at(i) == center(g));
            CHECK(p.D.at(i) == centralizer_mod(g, trivial_subgroup(g), p.g_term(i - 1)));
        }
    }
}

TEST_CASE("sandwich inclusions hold across the corpus") {
    for (const CorpusEntry& e : builtin_corpus(256)) {
        SeriesProfile p = series_profile(e.group);
        CAPTURE(e.group->name());
        for (unsigned i = 1; i <= p.maxIndex(); ++i) {
            CHECK(p.g_term(i + 1).subset_of(p.v_term(i)));
            CHECK(p.v_term(i).subset_of(p.g_term(i)));
        }
    }
}

TEST_CASE("every series term is normal") {
    for (const GroupPtr& g : {s3(), build_builtin_family("utsub", {32}),
                              build_unitriangular(4, 2)}) {
        SeriesProfile p = series_profile(g);
        for (const auto& t : p.lower) CHECK(is_normal(g, t));
        for (const auto& t : p.vanishing) CHECK(is_normal(g, t));
        for (const auto& [i, s] : p.Y) CHECK(is_normal(g, s));
        for (const auto& [i, s] : p.D) CHECK(is_normal(g, s));
        for (const auto& [i, s] : p.E) CHECK(is_normal(g, s));
    }
}

TEST_CASE("H1 answers") {
    auto q = build_quaternion(8);
    CHECK_THROWS_AS(is_H1(q, 2), ValidationError);
    // V_3 = G_3 = 1: vacuously true.
    CHECK(is_H1(q, 3).holds);
    // V(G) = G gives V_3 = G_3 as well.
    CHECK(is_H1(build_unitriangular(4, 2), 3).holds);
    // Proper v-series terms, checked over every intermediate normal subgroup.
    SeriesProfile w32 = series_profile(build_builtin_family("utsub", {32}));
    CHECK(is_H1(w32, 3).holds);
    SeriesProfile w256 = series_profile(build_builtin_family("utsub", {256}));
    CHECK(is_H1(w256, 3).holds);
    CHECK(is_H1(w256, 4).holds);
    CHECK(is_H1(w256, 5).holds);
}

TEST_CASE("H1 consequences visible in the subgroup lattice") {
    // With V_4 < G_4 and H1 at 4: V_3 = G_3 intersect Y_4 and D_3 = E_4.
    SeriesProfile w = series_profile(build_builtin_family("utsub", {256}));
    REQUIRE(w.v_term(4).order() < w.g_term(4).order());
    SubgroupSet meet = w.g_term(3);
    meet.members &= w.Y.at(4).members;
    CHECK(w.v_term(3) == meet);
    CHECK(w.D.at(3) == w.E.at(4));
    CHECK(w.D.at(3).subset_of(w.D.at(4)));
}

TEST_CASE("camina recognition") {
    CHECK_FALSE(camina_data(build_cyclic(6)).isCamina);
    CHECK_FALSE(camina_data(build_abelian({2, 2})).isCamina);

    CaminaData s = camina_data(s3());
    CHECK(s.isCamina);
    CHECK_FALSE(s.class3); // not nilpotent

    CaminaData q = camina_data(build_quaternion(8));
    CHECK(q.isCamina);
    CHECK_FALSE(q.class3); // class 2
    CHECK(camina_data(build_dihedral(8)).isCamina);
    CHECK(camina_data(build_unitriangular(3, 2)).isCamina);
    CHECK(camina_data(build_extraspecial(3, 3)).isCamina);
    CHECK(camina_data(build_extraspecial(3, 9)).isCamina);
    CHECK(camina_data(build_extraspecial(5, 5)).isCamina);
    CHECK(camina_data(build_extraspecial(5, 25)).isCamina);

    // Nilpotent but not Camina: some class outside G' is smaller than a coset.
    CaminaData d16 = camina_data(build_dihedral(16));
    CHECK_FALSE(d16.isCamina);
    CHECK(d16.witness.has_value());
    CaminaData q16 = camina_data(build_quaternion(16));
    CHECK_FALSE(q16.isCamina);
    CHECK(q16.witness.has_value());
}

TEST_CASE("prime power recognition") {
    CHECK(prime_power(8) == std::pair<unsigned, unsigned>{2, 3});
    CHECK(prime_power(2) == std::pair<unsigned, unsigned>{2, 1});
    CHECK(prime_power(125) == std::pair<unsigned, unsigned>{5, 3});
    CHECK(prime_power(729) == std::pair<unsigned, unsigned>{3, 6});
    CHECK_FALSE(prime_power(12).has_value());
    CHECK_FALSE(prime_power(1).has_value());
    CHECK_FALSE(prime_power(0).has_value());
}

TEST_CASE("index laws where the v-series separates at index three") {
    for (unsigned order : {32u, 243u, 256u}) {
        auto g = build_builtin_family("utsub", {order});
        SeriesProfile p = series_profile(g);
        CAPTURE(order);
        REQUIRE(p.v_term(3).order() < p.g_term(3).order());
        std::size_t overV1 = g->order() / p.v_term(1).order();
        std::size_t overV2 = p.g_term(2).order() / p.v_term(2).order();
        CHECK(overV1 == overV2 * overV2);
        REQUIRE(p.sectionP.has_value());
        REQUIRE(p.n.has_value());
        // |G : D_3| = p^n, or D_3 = V_1.
        std::size_t dIndex = g->order() / p.D.at(3).order();
        std::size_t pn = 1;
        for (unsigned k = 0; k < *p.n; ++k) pn *= *p.sectionP;
        bool byIndex = dIndex == pn;
        bool byEquality = p.D.at(3) == p.v_term(1);
        CHECK((byIndex || byEquality));
    }
}

TEST_CASE("elementary abelian sections when the separation starts early") {
    for (unsigned order : {32u, 243u, 256u}) {
        auto g = build_builtin_family("utsub", {order});
        SeriesProfile p = series_profile(g);
        REQUIRE(p.v_term(2).order() < p.g_term(2).order());
        REQUIRE(p.sectionP.has_value());
        for (unsigned i = 1; i <= p.maxIndex(); ++i) {
            QuotientMap q = quotient(g, p.v_term(i).members);
            Bitset image(q.target->order());
            VOS_FOR_SET(x, p.g_term(i).members) image.set(q.apply(Idx(x)));
            SubgroupSet section{q.target, image};
            for (unsigned inv : abelian_invariants(section)) CHECK(inv == *p.sectionP);
        }
    }
}
