#pragma once

#include <cstdint>
#include <vector>

#include "vos/cyclotomic.hpp"
#include "vos/subgroup.hpp"

namespace vos {

struct CharTableOptions {
    // Largest group order the table computation will accept.
    std::size_t orderCap = 1024;
};

struct CharacterRow {
    unsigned degree = 0;
    bool trivial = false;
    std::vector<CyclotomicInt> values; // indexed by class id
};

// Exact irreducible character table. Rows are sorted by degree, the trivial
// character first, then lexicographically by coefficient vectors, so the
// table is canonical for a given group.
struct CharacterTable {
    GroupPtr group;
    ConjugacyClassData classes;
    unsigned conductor = 1;         // exponent of the group
    std::uint64_t modulusUsed = 0;  // the modular-splitting prime
    CyclotomicRingPtr ring;
    std::vector<CharacterRow> rows;
};

// Dixon-Burnside: split the class-multiplication matrices over the field with
// l elements, l the least prime with l = 1 (mod exponent) and l > 2*sqrt(|G|),
// then lift each character to exact cyclotomic integers via root-of-unity
// multiplicities. Orthogonality and the degree sum are re-verified exactly on
// the lifted table; violations are internal errors, never warnings.
CharacterTable character_table(const GroupPtr& g, const CharTableOptions& opts = {});

// Class ids where the row's exact value is zero, ascending.
std::vector<std::size_t> vanishing_set(const CharacterTable& t, std::size_t row);

// Row indices whose kernel does not contain h (h must be normal), ascending.
// The kernel of a row is the union of the classes where the value equals the
// degree.
std::vector<std::size_t> irr_over(const CharacterTable& t, const SubgroupSet& h);

// V(G) recomputed from the table: the subgroup generated by all elements of
// classes where some row of degree > 1 is nonzero. This is the table-driven
// route to the same subgroup vanishing_off_subgroup computes from centralizer
// orders; the two are cross-checked in the test suite.
SubgroupSet v_from_characters(const CharacterTable& t);
SubgroupSet v_from_characters(const GroupPtr& g, const CharTableOptions& opts = {});

} // namespace vos
