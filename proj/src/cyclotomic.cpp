#include "vos/cyclotomic.hpp"

#include <string>

namespace vos {

namespace {

using Poly = std::vector<std::int64_t>; // ascending coefficients

// Exact division of integer polynomials; g must be monic and divide f.
Poly divide_exact(Poly f, const Poly& g) {
    if (f.size() < g.size()) throw InternalError("cyclotomic division underflow");
    Poly q(f.size() - g.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        std::int64_t c = f[i + g.size() - 1];
        q[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) f[i + j] -= c * g[j];
    }
    for (std::int64_t c : f)
        if (c != 0) throw InternalError("cyclotomic division left a remainder");
    return q;
}

Poly cyclotomic_polynomial(unsigned e) {
    // For each divisor d of e in ascending order, x^d - 1 divided by the
    // cyclotomic polynomials of the proper divisors of d.
    std::vector<std::pair<unsigned, Poly>> byDivisor;
    for (unsigned d = 1; d <= e; ++d) {
        if (e % d) continue;
        Poly f(d + 1, 0);
        f[0] = -1;
        f[d] = 1;
        for (const auto& [dd, fd] : byDivisor)
            if (d % dd == 0) f = divide_exact(std::move(f), fd);
        byDivisor.emplace_back(d, std::move(f));
    }
    return byDivisor.back().second;
}

unsigned totient(unsigned e) {
    unsigned r = e;
    for (unsigned p = 2; p * p <= e; ++p) {
        if (e % p) continue;
        r -= r / p;
        while (e % p == 0) e /= p;
    }
    if (e > 1) r -= r / e;
    return r;
}

void check_same_ring(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (!a.ring || !b.ring) throw ValidationError("cyclotomic value without a ring");
    if (a.ring->conductor() != b.ring->conductor())
        throw ValidationError("mixed cyclotomic conductors " +
                              std::to_string(a.ring->conductor()) + " and " +
                              std::to_string(b.ring->conductor()));
}

} // namespace

CyclotomicRing::CyclotomicRing(unsigned conductor) {
    if (conductor == 0) throw ValidationError("conductor must be positive");
    e_ = conductor;
    poly_ = cyclotomic_polynomial(e_);
    phi_ = totient(e_);
    if (poly_.size() != phi_ + 1 || poly_.back() != 1)
        throw InternalError("cyclotomic polynomial has wrong degree");
    // powers_[k] = x^k reduced; x^phi folds back through the monic polynomial.
    powers_.assign(e_, std::vector<std::int64_t>(phi_, 0));
    powers_[0][0] = 1;
    for (unsigned k = 1; k < e_; ++k) {
        const auto& prev = powers_[k - 1];
        auto& cur = powers_[k];
        std::int64_t top = prev[phi_ - 1];
        for (unsigned j = 0; j < phi_; ++j)
            cur[j] = (j ? prev[j - 1] : 0) - top * poly_[j];
    }
}

const std::vector<std::int64_t>& CyclotomicRing::root_power(long long k) const {
    long long m = k % e_;
    if (m < 0) m += e_;
    return powers_[std::size_t(m)];
}

CyclotomicRingPtr cyclotomic_ring(unsigned conductor) {
    return std::make_shared<CyclotomicRing>(conductor);
}

bool CyclotomicInt::zero() const {
    for (std::int64_t c : coeff)
        if (c != 0) return false;
    return true;
}

bool CyclotomicInt::is_integer(std::int64_t n) const {
    if (coeff.empty() || coeff[0] != n) return false;
    for (std::size_t j = 1; j < coeff.size(); ++j)
        if (coeff[j] != 0) return false;
    return true;
}

CyclotomicInt cyc_zero(const CyclotomicRingPtr& ring) {
    if (!ring) throw ValidationError("cyclotomic value without a ring");
    return {ring, std::vector<std::int64_t>(ring->degree(), 0)};
}

CyclotomicInt cyc_integer(const CyclotomicRingPtr& ring, std::int64_t n) {
    CyclotomicInt r = cyc_zero(ring);
    r.coeff[0] = n;
    return r;
}

CyclotomicInt cyc_root_power(const CyclotomicRingPtr& ring, long long k) {
    if (!ring) throw ValidationError("cyclotomic value without a ring");
    return {ring, ring->root_power(k)};
}

CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b) {
    check_same_ring(a, b);
    CyclotomicInt r = a;
    for (std::size_t j = 0; j < r.coeff.size(); ++j) r.coeff[j] += b.coeff[j];
    return r;
}

CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b) {
    check_same_ring(a, b);
    CyclotomicInt r = a;
    for (std::size_t j = 0; j < r.coeff.size(); ++j) r.coeff[j] -= b.coeff[j];
    return r;
}

CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    check_same_ring(a, b);
    const unsigned phi = a.ring->degree();
    std::vector<std::int64_t> conv(2 * phi - 1, 0);
    for (unsigned i = 0; i < phi; ++i) {
        if (a.coeff[i] == 0) continue;
        for (unsigned j = 0; j < phi; ++j) conv[i + j] += a.coeff[i] * b.coeff[j];
    }
    CyclotomicInt r = cyc_zero(a.ring);
    for (unsigned j = 0; j < phi; ++j) r.coeff[j] = conv[j];
    for (unsigned j = phi; j < conv.size(); ++j) {
        if (conv[j] == 0) continue;
        const auto& pw = a.ring->root_power(j);
        for (unsigned t = 0; t < phi; ++t) r.coeff[t] += conv[j] * pw[t];
    }
    return r;
}

CyclotomicInt operator*(std::int64_t s, const CyclotomicInt& a) {
    CyclotomicInt r = a;
    for (auto& c : r.coeff) c *= s;
    return r;
}

bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    check_same_ring(a, b);
    return a.coeff == b.coeff;
}

bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) { return !(a == b); }

CyclotomicInt conj(const CyclotomicInt& a) {
    if (!a.ring) throw ValidationError("cyclotomic value without a ring");
    const unsigned e = a.ring->conductor();
    CyclotomicInt r = cyc_zero(a.ring);
    for (std::size_t j = 0; j < a.coeff.size(); ++j) {
        if (a.coeff[j] == 0) continue;
        const auto& pw = a.ring->root_power(static_cast<long long>(e) - static_cast<long long>(j));
        for (std::size_t t = 0; t < r.coeff.size(); ++t) r.coeff[t] += a.coeff[j] * pw[t];
    }
    return r;
}

CyclotomicInt norm_abs2(const CyclotomicInt& a) { return a * conj(a); }

} // namespace vos
