#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "vos/group.hpp"
#include "vos/subgroup.hpp"

using namespace vos;

namespace {

std::multiset<unsigned> order_multiset(const GroupPtr& g) {
    std::multiset<unsigned> out;
    for (Idx x = 0; x < g->order(); ++x) out.insert(g->element_order(x));
    return out;
}

GroupPtr s3() {
    return build_from_permutations("S3", 3, {{1, 2, 0}, {1, 0, 2}});
}

// Quaternion group as permutations of its own eight elements
// {1, -1, i, -i, j, -j, k, -k} acting by right multiplication.
GroupPtr q8_perm() {
    return build_from_permutations("Q8p", 8,
                                   {{2, 3, 1, 0, 7, 6, 4, 5}, {4, 5, 6, 7, 1, 0, 3, 2}});
}

} // namespace

TEST_CASE("permutation builder basics") {
    auto g = s3();
    CHECK(g->order() == 6);
    CHECK(g->name() == "S3");
    CHECK_FALSE(g->is_abelian());
    CHECK(g->exponent() == 6);
    CHECK(order_multiset(g) == std::multiset<unsigned>{1, 2, 2, 2, 3, 3});
    // Index 0 is the identity.
    for (Idx x = 0; x < g->order(); ++x) {
        CHECK(g->mul(0, x) == x);
        CHECK(g->mul(x, 0) == x);
        CHECK(g->mul(x, g->inv(x)) == 0);
        CHECK(g->mul(g->inv(x), x) == 0);
    }
}

TEST_CASE("trivial and identity-only generator lists") {
    CHECK(build_from_permutations("T", 3, {})->order() == 1);
    CHECK(build_from_permutations("T", 3, {{0, 1, 2}})->order() == 1);
}

TEST_CASE("permutation builder rejects bad input") {
    CHECK_THROWS_AS(build_from_permutations("X", 3, {{0, 0, 2}}), ValidationError);
    CHECK_THROWS_AS(build_from_permutations("X", 3, {{0, 1}}), ValidationError);
    CHECK_THROWS_AS(build_from_permutations("X", 3, {{0, 1, 3}}), ValidationError);
    CHECK_THROWS_AS(build_from_permutations("X", 0, {}), ValidationError);
}

TEST_CASE("breadth-first element indexing is deterministic") {
    auto a = s3();
    auto b = s3();
    for (Idx x = 0; x < a->order(); ++x)
        for (Idx y = 0; y < a->order(); ++y) CHECK(a->mul(x, y) == b->mul(x, y));
    // Generators come right after the identity, in list order.
    CHECK(a->generators() == std::vector<Idx>{1, 2});
}

TEST_CASE("group axioms hold exhaustively on mixed backends") {
    for (const GroupPtr& g : {s3(), build_quaternion(8), build_dihedral(16),
                              build_unitriangular(3, 3), build_cyclic(12)}) {
        REQUIRE(g->order() <= 256);
        for (Idx x = 0; x < g->order(); ++x)
            for (Idx y = 0; y < g->order(); ++y)
                for (Idx z = 0; z < g->order(); ++z)
                    CHECK(g->mul(g->mul(x, y), z) == g->mul(x, g->mul(y, z)));
    }
}

TEST_CASE("powers and element orders") {
    auto g = build_quaternion(8);
    CHECK(g->order() == 8);
    CHECK(order_multiset(g) == std::multiset<unsigned>{1, 2, 4, 4, 4, 4, 4, 4});
    CHECK(g->exponent() == 4);
    for (Idx x = 0; x < g->order(); ++x) {
        CHECK(g->pow(x, 0) == 0);
        CHECK(g->pow(x, 1) == x);
        CHECK(g->pow(x, -1) == g->inv(x));
        unsigned n = g->element_order(x);
        CHECK(g->pow(x, n) == 0);
        CHECK(g->pow(x, 7 * n + 1) == x);
        CHECK(g->pow(x, -(long long)n) == 0);
    }
}

TEST_CASE("conjugation and commutator identities") {
    auto g = build_dihedral(8);
    for (Idx x = 0; x < g->order(); ++x)
        for (Idx t = 0; t < g->order(); ++t) {
            CHECK(g->conj(x, t) == g->mul(g->mul(g->inv(t), x), t));
            // [x, t] = x^-1 * x^t
            CHECK(g->comm(x, t) == g->mul(g->inv(x), g->conj(x, t)));
        }
}

TEST_CASE("unitriangular groups over small fields") {
    auto u32 = build_unitriangular(3, 2);
    CHECK(u32->order() == 8);
    CHECK(u32->name() == "UT(3,2)");
    CHECK(build_unitriangular(3, 3)->order() == 27);
    CHECK(build_unitriangular(4, 2)->order() == 64);
    CHECK(build_unitriangular(4, 3)->order() == 729);
    CHECK(build_unitriangular(5, 2)->order() == 1024);
    CHECK_THROWS_AS(build_unitriangular(3, 4), ValidationError);
    CHECK_THROWS_AS(build_unitriangular(1, 2), ValidationError);
}

TEST_CASE("explicit unitriangular generators") {
    // <I+E12, I+E23+E34> inside UT(4,2).
    auto g = build_from_unitriangular_generators("W", 4, 2,
                                                 {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 1}});
    CHECK(g->order() == 32);
    CHECK_THROWS_AS(
        build_from_unitriangular_generators("W", 4, 2, {{1, 0, 0}}), ValidationError);
    CHECK_THROWS_AS(
        build_from_unitriangular_generators("W", 4, 2, {{2, 0, 0, 0, 0, 0}}), ValidationError);
}

TEST_CASE("cayley table builder accepts a group and rejects non-groups") {
    auto c4 = build_from_cayley_table(
        "C4t", {0, 1, 2, 3, 1, 2, 3, 0, 2, 3, 0, 1, 3, 0, 1, 2});
    CHECK(c4->order() == 4);
    CHECK(c4->is_abelian());
    CHECK(c4->element_order(1) == 4);

    CHECK(build_from_cayley_table("T", {0})->order() == 1);

    // Index 0 must act as the identity.
    CHECK_THROWS_AS(build_from_cayley_table("X", {1, 0, 0, 1}), ValidationError);
    // Row repeats an entry.
    CHECK_THROWS_AS(build_from_cayley_table("X", {0, 1, 1, 1}), ValidationError);
    // Not a square table.
    CHECK_THROWS_AS(build_from_cayley_table("X", {0, 1, 1}), ValidationError);

    // A Latin square with identity that is not associative: element 1 squares
    // to the identity, which no order-5 group allows.
    std::vector<Idx> loop = {
        0, 1, 2, 3, 4,
        1, 0, 3, 4, 2,
        2, 3, 4, 0, 1,
        3, 4, 1, 2, 0,
        4, 2, 0, 1, 3};
    CHECK_THROWS_AS(build_from_cayley_table("L", loop), ValidationError);
}

TEST_CASE("named families") {
    CHECK(build_cyclic(6)->order() == 6);
    CHECK(build_cyclic(6)->is_abelian());
    CHECK(build_cyclic(6)->exponent() == 6);
    CHECK(build_abelian({2, 4})->order() == 8);
    CHECK(build_abelian({2, 4})->exponent() == 4);
    CHECK(build_dihedral(16)->order() == 16);
    CHECK(build_quaternion(16)->order() == 16);
    CHECK(order_multiset(build_quaternion(16)).count(2) == 1); // unique involution
    CHECK(build_extraspecial(3, 3)->order() == 27);
    CHECK(build_extraspecial(3, 3)->exponent() == 3);
    CHECK(build_extraspecial(3, 9)->order() == 27);
    CHECK(build_extraspecial(3, 9)->exponent() == 9);
    CHECK(build_extraspecial(5, 5)->order() == 125);
    CHECK_THROWS_AS(build_extraspecial(4, 4), ValidationError);
    CHECK_THROWS_AS(build_extraspecial(3, 27), ValidationError);
    CHECK(build_quaternion(12)->order() == 12); // dicyclic, order 4m
    CHECK_THROWS_AS(build_dihedral(7), ValidationError);
    CHECK_THROWS_AS(build_quaternion(10), ValidationError);
    CHECK_THROWS_AS(build_cyclic(0), ValidationError);
}

TEST_CASE("prime detection for p-groups") {
    CHECK(build_quaternion(8)->prime() == 2u);
    CHECK(build_unitriangular(3, 3)->prime() == 3u);
    CHECK_FALSE(s3()->prime().has_value());
    CHECK_FALSE(build_cyclic(6)->prime().has_value());
    CHECK_FALSE(build_cyclic(1)->prime().has_value());
}

TEST_CASE("direct products") {
    auto g = direct_product(build_quaternion(8), build_cyclic(2));
    CHECK(g->order() == 16);
    CHECK(g->name() == "Q8xC2");
    CHECK(order_multiset(g) == std::multiset<unsigned>{1, 2, 2, 2, 4, 4, 4, 4, 4, 4,
                                                       4, 4, 4, 4, 4, 4});
}

TEST_CASE("element handles refuse to mix owners") {
    auto a = s3();
    auto b = build_quaternion(8);
    Element ea = identity_of(*a);
    Element eb = identity_of(*b);
    CHECK(mul(ea, ea).index == 0);
    CHECK(inv(ea).index == 0);
    CHECK(element_order(ea) == 1);
    CHECK_THROWS_AS(mul(ea, eb), ValidationError);
    CHECK_THROWS_AS(mul(Element{}, ea), ValidationError);
}

TEST_CASE("element labels are printable for every backend") {
    for (const GroupPtr& g : {s3(), build_quaternion(8), build_unitriangular(3, 2),
                              build_from_cayley_table("C2t", {0, 1, 1, 0})}) {
        for (Idx x = 0; x < g->order(); ++x) CHECK_FALSE(g->element_label(x).empty());
    }
}

TEST_CASE("quotient by the alternating subgroup of S3") {
    auto g = s3();
    std::vector<Idx> threeCycles;
    for (Idx x = 0; x < g->order(); ++x)
        if (g->element_order(x) == 3) threeCycles.push_back(x);
    SubgroupSet a3 = generated_subgroup(g, threeCycles);
    REQUIRE(a3.order() == 3);
    QuotientMap q = quotient(g, a3.members);
    CHECK(q.target->order() == 2);
    CHECK(q.apply(0) == 0);
    CHECK(q.kernel == a3.members);
    // The projection is a homomorphism.
    for (Idx x = 0; x < g->order(); ++x)
        for (Idx y = 0; y < g->order(); ++y)
            CHECK(q.apply(g->mul(x, y)) == q.target->mul(q.apply(x), q.apply(y)));
}

TEST_CASE("quotient of the quaternion group by its center is Klein") {
    auto g = build_quaternion(8);
    SubgroupSet z = center(g);
    REQUIRE(z.order() == 2);
    QuotientMap q = quotient(g, z.members);
    CHECK(q.target->order() == 4);
    CHECK(abelian_invariants(full_subgroup(q.target)) == std::vector<unsigned>{2, 2});
}

TEST_CASE("quotient by the trivial subgroup preserves structure") {
    auto g = build_dihedral(8);
    Bitset triv(g->order());
    triv.set(0);
    QuotientMap q = quotient(g, triv);
    CHECK(q.target->order() == g->order());
    CHECK(order_multiset(q.target) == order_multiset(g));
    for (Idx x = 0; x < g->order(); ++x)
        for (Idx y = 0; y < g->order(); ++y)
            CHECK(q.apply(g->mul(x, y)) == q.target->mul(q.apply(x), q.apply(y)));
}

TEST_CASE("quotient validates its kernel") {
    auto g = s3();
    std::vector<Idx> swaps;
    for (Idx x = 0; x < g->order(); ++x)
        if (g->element_order(x) == 2) swaps.push_back(x);
    SubgroupSet h = generated_subgroup(g, {swaps[0]});
    REQUIRE(h.order() == 2);
    CHECK_THROWS_AS(quotient(g, h.members), ValidationError);

    Bitset notClosed(g->order());
    notClosed.set(0);
    notClosed.set(swaps[0]);
    notClosed.set(swaps[1]);
    CHECK_THROWS_AS(quotient(g, notClosed), ValidationError);

    Bitset noIdentity(g->order());
    noIdentity.set(swaps[0]);
    CHECK_THROWS_AS(quotient(g, noIdentity), ValidationError);
}

TEST_CASE("quotient map preimages") {
    auto g = build_quaternion(8);
    SubgroupSet z = center(g);
    QuotientMap q = quotient(g, z.members);
    Bitset targetTrivial(q.target->order());
    targetTrivial.set(0);
    CHECK(q.preimage(targetTrivial) == q.kernel);
    Bitset all(q.target->order());
    for (Idx x = 0; x < q.target->order(); ++x) all.set(x);
    CHECK(q.preimage(all).count() == g->order());
}

TEST_CASE("subgroup extraction gives standalone groups") {
    auto g = s3();
    std::vector<Idx> threeCycles;
    for (Idx x = 0; x < g->order(); ++x)
        if (g->element_order(x) == 3) threeCycles.push_back(x);
    SubgroupSet a3 = generated_subgroup(g, threeCycles);
    GroupPtr h = extract_subgroup(g, a3.members, "A3");
    CHECK(h->order() == 3);
    CHECK(h->name() == "A3");
    CHECK(order_multiset(h) == std::multiset<unsigned>{1, 3, 3});
}

TEST_CASE("the same group through different backends agrees") {
    auto viaTable = build_quaternion(8);
    auto viaPerms = q8_perm();
    CHECK(viaTable->order() == viaPerms->order());
    CHECK(order_multiset(viaTable) == order_multiset(viaPerms));
    CHECK(center(viaTable).order() == center(viaPerms).order());
    auto derivedOf = [](const GroupPtr& g) {
        return commutator_subgroup(g, full_subgroup(g), full_subgroup(g)).order();
    };
    CHECK(derivedOf(viaTable) == derivedOf(viaPerms));
}

TEST_CASE("out-of-range indices are rejected") {
    auto g = s3();
    CHECK_THROWS_AS(g->mul(0, 6), ValidationError);
    CHECK_THROWS_AS(g->mul(6, 0), ValidationError);
    CHECK_THROWS_AS((void)g->element_order(6), ValidationError);
}
