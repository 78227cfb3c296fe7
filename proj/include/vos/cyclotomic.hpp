#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "vos/errors.hpp"

namespace vos {

// Exact arithmetic in Z[zeta], zeta a primitive e-th root of unity. Elements
// are integer polynomials in zeta reduced modulo the e-th cyclotomic
// polynomial, on the basis 1, zeta, ..., zeta^(totient(e)-1). No floating
// point anywhere; the zero test is "all reduced coefficients are zero".
class CyclotomicRing {
public:
    explicit CyclotomicRing(unsigned conductor);

    unsigned conductor() const { return e_; }
    unsigned degree() const { return phi_; }

    // Coefficients of the e-th cyclotomic polynomial, ascending, monic.
    const std::vector<std::int64_t>& polynomial() const { return poly_; }

    // zeta^k on the basis, for any k (taken modulo the conductor).
    const std::vector<std::int64_t>& root_power(long long k) const;

private:
    unsigned e_ = 1, phi_ = 1;
    std::vector<std::int64_t> poly_;
    std::vector<std::vector<std::int64_t>> powers_;
};

using CyclotomicRingPtr = std::shared_ptr<const CyclotomicRing>;

CyclotomicRingPtr cyclotomic_ring(unsigned conductor);

struct CyclotomicInt {
    CyclotomicRingPtr ring;
    std::vector<std::int64_t> coeff; // length ring->degree()

    bool zero() const;
    // Equals the rational integer n.
    bool is_integer(std::int64_t n) const;
};

CyclotomicInt cyc_zero(const CyclotomicRingPtr& ring);
CyclotomicInt cyc_integer(const CyclotomicRingPtr& ring, std::int64_t n);
CyclotomicInt cyc_root_power(const CyclotomicRingPtr& ring, long long k);

CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b);
CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b);
CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b);
CyclotomicInt operator*(std::int64_t s, const CyclotomicInt& a);
bool operator==(const CyclotomicInt& a, const CyclotomicInt& b);
bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b);

// Complex conjugation: zeta -> zeta^(e-1).
CyclotomicInt conj(const CyclotomicInt& a);

// z * conj(z); real and non-negative, but returned as a ring element.
CyclotomicInt norm_abs2(const CyclotomicInt& a);

} // namespace vos
