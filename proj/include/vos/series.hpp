#pragma once

#include <map>
#include <optional>

#include "vos/subgroup.hpp"

namespace vos {

// G_1 = G, G_i = [G_{i-1}, G]. Terms are appended until the series stabilizes:
// a trivial term ends the list at once; a repeat of a nontrivial term is
// appended once and then the list ends. The group is nilpotent exactly when
// the final term is trivial.
std::vector<SubgroupSet> lower_central_series(const GroupPtr& g);

// V(G) = <g : |C_G(g)| > |G:G'|>, the subgroup generated by the elements where
// some nonlinear irreducible character is nonzero. Character-free: by the
// second orthogonality relation sum_chi |chi(g)|^2 = |C_G(g)|, and the linear
// characters contribute exactly |G:G'|, so every nonlinear character vanishes
// at g exactly when |C_G(g)| = |G:G'|.
SubgroupSet vanishing_off_subgroup(const GroupPtr& g);

// V_1 = V(G), V_i = [V_{i-1}, G]; same stopping rule as the lower central
// series. Asserts G_{i+1} <= V_i <= G_i against lower_central_series.
std::vector<SubgroupSet> v_series(const GroupPtr& g);

struct SeriesProfile {
    GroupPtr group;
    std::vector<SubgroupSet> lower;
    std::vector<SubgroupSet> vanishing;
    bool nilpotent = false;
    unsigned nilpotenceClass = 0;    // meaningful only when nilpotent
    std::optional<unsigned> p;       // group prime when G is a p-group
    std::optional<unsigned> sectionP; // unique prime factor of |G:V_1| when V_1 < G
    std::optional<unsigned> n;       // |G:V_1| = sectionP^(2n) when the power is even

    // Y_i/V_i = Z(G/V_i); D_i/V_i = C_{G/V_i}(G_{i-1}/V_i), computed for
    // 3 <= i <= maxIndex(); E_i/(G_{i-1} cap Y_i) = the centralizer of
    // G_{i-2} modulo G_{i-1} cap Y_i, for 4 <= i <= maxIndex().
    std::map<unsigned, SubgroupSet> Y, D, E;

    // Stable term accessors (1-based): indices past the computed list return
    // the final, stabilized term.
    const SubgroupSet& g_term(unsigned i) const;
    const SubgroupSet& v_term(unsigned i) const;
    unsigned maxIndex() const { return unsigned(lower.size()); }
};

SeriesProfile series_profile(const GroupPtr& g);

struct SeriesSubgroups {
    SubgroupSet Y;
    SubgroupSet D;
    std::optional<SubgroupSet> E; // present for i >= 4
};

// Errors with "index beyond class" when i < 3 or i exceeds the series length.
SeriesSubgroups series_subgroups(const GroupPtr& g, unsigned i);

struct H1Result {
    bool holds = false;
    std::optional<SubgroupSet> witnessN; // failing N when holds is false
};

// G_k is H_1 when for every normal N with V_k <= N < G_k, the image of V_{k-1}
// in G/N equals the image of G_{k-1} intersected with Z(G/N). Vacuously true
// when V_k = G_k.
H1Result is_H1(const SeriesProfile& prof, unsigned k);
H1Result is_H1(const GroupPtr& g, unsigned k);

struct CaminaData {
    bool isCamina = false;
    std::optional<Idx> witness; // x outside G' with cl(x) != xG'
    bool class3 = false;        // Camina and nilpotent of class exactly 3
    std::optional<unsigned> p;  // with nFromIndex: |G:G'| = p^(2n), when class3
    std::optional<unsigned> nFromIndex;
};

// Camina: 1 < G' < G and cl(x) = xG' for every x outside G'. Abelian groups
// and groups with G' = G are not Camina.
CaminaData camina_data(const GroupPtr& g);

// Helpers shared with the verification suite: factor m as prime^k, if possible.
std::optional<std::pair<unsigned, unsigned>> prime_power(std::size_t m);

} // namespace vos
