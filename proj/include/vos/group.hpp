#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vos/bitset.hpp"
#include "vos/errors.hpp"

namespace vos {

using Idx = std::uint32_t;

struct BuildOptions {
    // Above denseCap elements the full multiplication table is not stored and
    // products are recomputed from the concrete representation.
    std::size_t denseCap = 4096;
    std::size_t blackboxCap = 1000000;
};

using Perm = std::vector<std::uint16_t>;

// Strictly-upper entries of an n x n unitriangular matrix over F_p, row major:
// (0,1),(0,2),...,(0,n-1),(1,2),...
using UniMat = std::vector<std::uint8_t>;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// Finite group with elements indexed 0..order-1 and index 0 the identity.
// Groups produced by the builders index elements in breadth-first closure
// order over the generator list (shortest word, ties by generator position,
// then by smaller left-factor index); quotients index cosets by their minimal
// source-index representative. Immutable after construction.
class Group {
public:
    Idx order() const { return order_; }
    const std::string& name() const { return name_; }
    const std::vector<Idx>& generators() const { return gens_; }

    Idx mul(Idx a, Idx b) const;
    Idx inv(Idx a) const { return inv_[a]; }
    Idx conj(Idx x, Idx g) const { return mul(mul(inv(g), x), g); }
    Idx comm(Idx x, Idx y) const { return mul(mul(inv(mul(y, x)), x), y); } // x^-1 y^-1 x y
    Idx pow(Idx g, long long n) const;

    unsigned element_order(Idx g) const;
    unsigned exponent() const; // lcm of element orders
    bool is_abelian() const;

    // p when |G| = p^k with k >= 1, otherwise empty.
    std::optional<unsigned> prime() const;

    std::string element_label(Idx g) const;

    // Quotient-view groups keep their source alive; everything else owns its data.
    ~Group() = default;

private:
    Group() = default;

    struct Cayley {
        std::vector<Idx> table; // order*order, row major
    };
    struct PermRep {
        unsigned degree = 0;
        std::vector<Perm> elems;
    };
    struct MatRep {
        unsigned n = 0, p = 0;
        std::vector<UniMat> elems;
    };
    struct QuotientView {
        GroupPtr source;
        std::vector<Idx> reps; // coset id -> minimal source representative
        std::vector<Idx> proj; // source index -> coset id
    };

    std::string name_;
    Idx order_ = 0;
    std::vector<Idx> gens_;
    std::vector<Idx> inv_;
    std::vector<std::string> labels_;  // optional display labels
    std::vector<Idx> sorted_;          // indices ordered by concrete rep, for lookups
    std::variant<Cayley, PermRep, MatRep, QuotientView> rep_;

    // element -> index lookups for the non-table backends
    Idx lookup_perm(const Perm&) const;
    Idx lookup_mat(const UniMat&) const;

    friend class GroupBuilder;
};

// Validated element handle. Operations refuse to mix owners.
struct Element {
    const Group* owner = nullptr;
    Idx index = 0;
};

Element identity_of(const Group& g);
Element mul(Element a, Element b);
Element inv(Element a);
unsigned element_order(Element a);

struct QuotientMap {
    GroupPtr source;
    GroupPtr target;
    Bitset kernel;
    std::vector<Idx> proj; // source index -> target index

    Idx apply(Idx g) const { return proj[g]; }
    // All source elements mapping onto the subset S of the target.
    Bitset preimage(const Bitset& S) const;
};

/* builders */

GroupPtr build_from_permutations(const std::string& name, unsigned degree,
                                 const std::vector<std::vector<unsigned>>& gens,
                                 const BuildOptions& opts = {});

// Full group of upper unitriangular n x n matrices over F_p, generated by the
// superdiagonal transvections I + E_{i,i+1}.
GroupPtr build_unitriangular(unsigned n, unsigned p, const BuildOptions& opts = {});

// Closure of an explicit list of unitriangular generator matrices.
GroupPtr build_from_unitriangular_generators(const std::string& name, unsigned n, unsigned p,
                                             const std::vector<UniMat>& gens,
                                             const BuildOptions& opts = {});

// Explicit multiplication table, row major, with raw index 0 the identity.
// Validated before use: every row and column must be a permutation, index 0
// must act as the identity, and associativity is checked by Light's test over
// a greedily chosen generating set.
GroupPtr build_from_cayley_table(const std::string& name, const std::vector<Idx>& table,
                                 const BuildOptions& opts = {});

GroupPtr build_cyclic(unsigned n, const BuildOptions& opts = {});
GroupPtr build_abelian(const std::vector<unsigned>& factors, const BuildOptions& opts = {});
GroupPtr build_dihedral(unsigned order, const BuildOptions& opts = {});   // order = 2m
GroupPtr build_quaternion(unsigned order, const BuildOptions& opts = {}); // order = 4m, generalized
// Extraspecial group of order p^3. For odd p, exponent is p or p*p. For p = 2
// pass exponent 4 and type '+' (dihedral) or '-' (quaternion).
GroupPtr build_extraspecial(unsigned p, unsigned exponent, char type = '+',
                            const BuildOptions& opts = {});
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, const BuildOptions& opts = {});

// N must be normal in G; the error names a witness pair otherwise.
QuotientMap quotient(const GroupPtr& g, const Bitset& normalSubgroup,
                     const BuildOptions& opts = {});

// Standalone copy of a subgroup, reindexed canonically from a greedily chosen
// generating set. Membership bitset must be closed under multiplication.
GroupPtr extract_subgroup(const GroupPtr& g, const Bitset& members, const std::string& name,
                          const BuildOptions& opts = {});

} // namespace vos
