#pragma once

#include <vector>

#include "vos/group.hpp"

namespace vos {

// Subgroup of a fixed parent group, stored as a membership bitset.
struct SubgroupSet {
    GroupPtr parent;
    Bitset members;

    std::size_t order() const { return members.count(); }
    bool contains(Idx g) const { return members.test(g); }
    bool operator==(const SubgroupSet& o) const { return members == o.members; }
    bool subset_of(const SubgroupSet& o) const { return members.subset_of(o.members); }
};

SubgroupSet trivial_subgroup(const GroupPtr& g);
SubgroupSet full_subgroup(const GroupPtr& g);

SubgroupSet generated_subgroup(const GroupPtr& g, const std::vector<Idx>& gens);

// Greedy small generating list: scan ascending, keep indices that enlarge the
// closure. Deterministic; at most log2 |H| entries.
std::vector<Idx> small_generating_set(const SubgroupSet& h);

// [H, K]: normal closure of the generator commutators under <H union K>.
SubgroupSet commutator_subgroup(const GroupPtr& g, const SubgroupSet& h, const SubgroupSet& k);

SubgroupSet centralizer(const GroupPtr& g, Idx x);

// {g : [g, h] in N for every h in H}; N must be normal in G. Equals the
// preimage of the centralizer of HN/N in G/N.
SubgroupSet centralizer_mod(const GroupPtr& g, const SubgroupSet& n, const SubgroupSet& h);

struct ConjugacyClassData {
    GroupPtr group;
    std::vector<Idx> classOf;        // element -> class id
    std::vector<Idx> representative; // class id -> minimal element
    std::vector<Idx> classSize;
    std::vector<Idx> centralizerOrder;

    std::size_t count() const { return representative.size(); }
};

// Orbits of conjugation by the generators; class ids ordered by minimal member.
ConjugacyClassData conjugacy_classes(const GroupPtr& g);

SubgroupSet center(const GroupPtr& g);

bool is_normal(const GroupPtr& g, const SubgroupSet& h);

struct EnumOptions {
    std::size_t subspaceCap = 1000000;
};

// All normal subgroups N of G with A <= N < B, where B/A must be elementary
// abelian; found by enumerating G-invariant subspaces of the section. Results
// ordered by order, then by membership.
std::vector<SubgroupSet> invariant_intermediate_subgroups(const GroupPtr& g, const SubgroupSet& a,
                                                          const SubgroupSet& b,
                                                          const EnumOptions& opts = {});

// Primary decomposition [p1^e1, p2^e2, ...] of an abelian subgroup, sorted
// ascending. Errors when H is not abelian.
std::vector<unsigned> abelian_invariants(const SubgroupSet& h);

} // namespace vos
