#include "vos/character_table.hpp"

#include <algorithm>
#include <string>

namespace vos {

namespace {

using u64 = std::uint64_t;

bool is_prime_u(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct Fp {
    u64 l;

    u64 add(u64 a, u64 b) const { return (a + b) % l; }
    u64 sub(u64 a, u64 b) const { return (a + l - b % l) % l; }
    u64 mul(u64 a, u64 b) const { return a * b % l; }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        a %= l;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const {
        if (a % l == 0) throw InternalError("division by zero mod l");
        return pow(a, l - 2);
    }
};

// Least prime l = 1 (mod e) with l*l > 4n, i.e. l > 2*sqrt(n).
u64 pick_prime(unsigned e, std::size_t n) {
    for (u64 l = e + 1;; l += e)
        if (l * l > 4 * u64(n) && is_prime_u(l)) return l;
}

u64 primitive_root(const Fp& F) {
    u64 m = F.l - 1;
    std::vector<u64> primes;
    u64 t = m;
    for (u64 d = 2; d * d <= t; ++d)
        if (t % d == 0) {
            primes.push_back(d);
            while (t % d == 0) t /= d;
        }
    if (t > 1) primes.push_back(t);
    for (u64 w = 2; w < F.l; ++w) {
        bool ok = true;
        for (u64 q : primes)
            if (F.pow(w, m / q) == 1) {
                ok = false;
                break;
            }
        if (ok) return w;
    }
    throw InternalError("no primitive root found");
}

using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

// Row-echelon basis with recorded pivot columns; vectors keep full length.
struct Echelon {
    const Fp* F = nullptr;
    std::vector<Vec> rows;
    std::vector<std::size_t> pivots;

    // Reduces v in place against the basis; returns false if v reduced to 0,
    // otherwise normalizes it, appends it, and returns true.
    bool add(Vec& v) {
        for (std::size_t t = 0; t < rows.size(); ++t) {
            u64 c = v[pivots[t]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = F->sub(v[j], F->mul(c, rows[t][j]));
        }
        std::size_t p = 0;
        while (p < v.size() && v[p] == 0) ++p;
        if (p == v.size()) return false;
        u64 inv = F->inv(v[p]);
        for (auto& x : v) x = F->mul(x, inv);
        rows.push_back(v);
        pivots.push_back(p);
        return true;
    }
};

using Poly = Vec; // ascending coefficients over F_l

Poly poly_trim(Poly f) {
    while (f.size() > 1 && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mul(const Fp& F, const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    return r;
}

Poly poly_mod(const Fp& F, Poly a, const Poly& m) {
    while (a.size() >= m.size() && !(a.size() == 1 && a[0] == 0)) {
        u64 c = F.mul(a.back(), F.inv(m.back()));
        std::size_t off = a.size() - m.size();
        for (std::size_t j = 0; j < m.size(); ++j) a[off + j] = F.sub(a[off + j], F.mul(c, m[j]));
        a = poly_trim(std::move(a));
        if (a.size() < m.size()) break;
    }
    return poly_trim(std::move(a));
}

Poly poly_divide(const Fp& F, Poly a, const Poly& m) {
    Poly q(a.size() >= m.size() ? a.size() - m.size() + 1 : 1, 0);
    u64 lead = F.inv(m.back());
    while (a.size() >= m.size() && !(a.size() == 1 && a[0] == 0)) {
        u64 c = F.mul(a.back(), lead);
        std::size_t off = a.size() - m.size();
        q[off] = c;
        for (std::size_t j = 0; j < m.size(); ++j) a[off + j] = F.sub(a[off + j], F.mul(c, m[j]));
        a = poly_trim(std::move(a));
        if (a.size() < m.size()) break;
    }
    return poly_trim(std::move(q));
}

Poly poly_gcd(const Fp& F, Poly a, Poly b) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!(b.size() == 1 && b[0] == 0)) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.back() != 1) {
        u64 inv = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, inv);
    }
    return a;
}

Poly poly_powmod(const Fp& F, Poly base, u64 e, const Poly& m) {
    Poly r{1};
    base = poly_mod(F, std::move(base), m);
    while (e) {
        if (e & 1) r = poly_mod(F, poly_mul(F, r, base), m);
        base = poly_mod(F, poly_mul(F, base, base), m);
        e >>= 1;
    }
    return r;
}

// Roots of f, which must split into distinct linear factors over F_l; found by
// deterministic quadratic-residue splitting.
void poly_roots(const Fp& F, Poly f, std::vector<u64>& out) {
    f = poly_trim(std::move(f));
    if (f.size() <= 1) return;
    if (f[0] == 0) { // factor out x
        out.push_back(0);
        f.erase(f.begin());
        poly_roots(F, std::move(f), out);
        return;
    }
    if (f.size() == 2) {
        out.push_back(F.mul(F.sub(0, f[0]), F.inv(f[1])));
        return;
    }
    for (u64 a = 0;; ++a) {
        if (a >= F.l) throw InternalError("root splitting failed to separate factors");
        Poly xa{a, 1};
        Poly h = poly_powmod(F, xa, (F.l - 1) / 2, f);
        if (h.empty()) h = {0};
        h[0] = F.sub(h[0], 1);
        Poly g = poly_gcd(F, f, h);
        if (g.size() > 1 && g.size() < f.size()) {
            Poly rest = poly_divide(F, f, g);
            poly_roots(F, std::move(g), out);
            poly_roots(F, std::move(rest), out);
            return;
        }
    }
}

// Minimal polynomial of the m x m matrix R (diagonalizable in this use):
// least common multiple of Krylov annihilators over standard seeds, where a
// seed already inside the accumulated Krylov span contributes nothing new.
Poly minimal_polynomial(const Fp& F, const Mat& R) {
    const std::size_t m = R.size();
    auto apply = [&](const Vec& v) {
        Vec w(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            u64 s = 0;
            for (std::size_t j = 0; j < m; ++j) s = F.add(s, F.mul(R[i][j], v[j]));
            w[i] = s;
        }
        return w;
    };
    Echelon covered{&F, {}, {}};
    Poly mp{1};
    for (std::size_t seed = 0; seed < m; ++seed) {
        Vec probe(m, 0);
        probe[seed] = 1;
        {
            Vec copy = probe;
            if (!covered.add(copy)) continue; // annihilator already divides mp
        }
        // Krylov chain from the seed with coefficient tracking.
        Echelon chain{&F, {}, {}};
        std::vector<Poly> combos; // combos[t]: chain.rows[t] as R-poly applied to seed
        Vec v = probe;
        Poly word{1}; // current power of x
        while (true) {
            Vec reduced = v;
            std::vector<u64> coeffs(chain.rows.size() + 1, 0);
            for (std::size_t t = 0; t < chain.rows.size(); ++t) {
                u64 c = reduced[chain.pivots[t]];
                coeffs[t] = c;
                if (c == 0) continue;
                for (std::size_t j = 0; j < m; ++j)
                    reduced[j] = F.sub(reduced[j], F.mul(c, chain.rows[t][j]));
            }
            std::size_t p = 0;
            while (p < m && reduced[p] == 0) ++p;
            if (p == m) {
                // v = sum coeffs[t] * chain[t]: annihilator = word - sum coeffs*combos
                Poly ann = word;
                for (std::size_t t = 0; t < chain.rows.size(); ++t) {
                    if (coeffs[t] == 0) continue;
                    for (std::size_t j = 0; j < combos[t].size(); ++j)
                        ann[j] = F.sub(ann[j], F.mul(coeffs[t], combos[t][j]));
                }
                ann = poly_trim(std::move(ann));
                Poly g = poly_gcd(F, mp, ann);
                mp = poly_mul(F, poly_divide(F, mp, g), ann); // lcm
                break;
            }
            u64 inv = F.inv(reduced[p]);
            Vec norm = reduced;
            for (auto& x : norm) x = F.mul(x, inv);
            Poly combo = word;
            for (std::size_t t = 0; t < chain.rows.size(); ++t) {
                if (coeffs[t] == 0) continue;
                for (std::size_t j = 0; j < combos[t].size(); ++j)
                    combo[j] = F.sub(combo[j], F.mul(coeffs[t], combos[t][j]));
            }
            for (auto& c : combo) c = F.mul(c, inv);
            chain.rows.push_back(norm);
            chain.pivots.push_back(p);
            combos.push_back(poly_trim(std::move(combo)));
            Vec cv = chain.rows.back();
            covered.add(cv);
            v = apply(v);
            word.insert(word.begin(), 0); // multiply by x
        }
        if (mp.size() == m + 1) break;
    }
    return mp;
}

// Basis of the kernel of R - lambda*I.
std::vector<Vec> eigen_kernel(const Fp& F, const Mat& R, u64 lambda) {
    const std::size_t m = R.size();
    Mat A = R;
    for (std::size_t i = 0; i < m; ++i) A[i][i] = F.sub(A[i][i], lambda);
    std::vector<std::size_t> pivotCol;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < m; ++col) {
        std::size_t sel = rank;
        while (sel < m && A[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(A[sel], A[rank]);
        u64 inv = F.inv(A[rank][col]);
        for (auto& x : A[rank]) x = F.mul(x, inv);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank || A[i][col] == 0) continue;
            u64 c = A[i][col];
            for (std::size_t j = 0; j < m; ++j) A[i][j] = F.sub(A[i][j], F.mul(c, A[rank][j]));
        }
        pivotCol.push_back(col);
        ++rank;
    }
    std::vector<bool> isPivot(m, false);
    for (std::size_t c : pivotCol) isPivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t freeCol = 0; freeCol < m; ++freeCol) {
        if (isPivot[freeCol]) continue;
        Vec v(m, 0);
        v[freeCol] = 1;
        for (std::size_t t = 0; t < rank; ++t) v[pivotCol[t]] = F.sub(0, A[t][freeCol]);
        basis.push_back(std::move(v));
    }
    return basis;
}

struct Space {
    std::vector<Vec> basis; // echelonized, full length r
    std::vector<std::size_t> pivots;
};

} // namespace

CharacterTable character_table(const GroupPtr& g, const CharTableOptions& opts) {
    if (!g) throw ValidationError("character_table requires a group");
    if (g->order() > opts.orderCap)
        throw CapError("character table cap exceeded: order " + std::to_string(g->order()) +
                       " > cap " + std::to_string(opts.orderCap));

    CharacterTable T;
    T.group = g;
    T.classes = conjugacy_classes(g);
    T.conductor = g->exponent();
    T.ring = cyclotomic_ring(T.conductor);

    const std::size_t r = T.classes.count();
    const std::size_t n = g->order();
    const unsigned e = T.conductor;
    if (T.classes.classOf[0] != 0)
        throw InternalError("identity is not in class 0");

    Fp F{pick_prime(e, n)};
    T.modulusUsed = F.l;

    std::vector<std::vector<Idx>> members(r);
    for (Idx x = 0; x < n; ++x) members[T.classes.classOf[x]].push_back(x);

    // Class-multiplication matrix for class i: B[j][k] counts pairs from
    // class i x class j multiplying to the class-k representative.
    auto classMatrix = [&](std::size_t i) {
        Mat B(r, Vec(r, 0));
        for (Idx x : members[i]) {
            Idx xi = g->inv(x);
            for (std::size_t k = 0; k < r; ++k) {
                std::size_t j = T.classes.classOf[g->mul(xi, T.classes.representative[k])];
                B[j][k] = F.add(B[j][k], 1);
            }
        }
        return B;
    };

    // Simultaneous eigenspace splitting, class matrices in index order.
    std::vector<Space> spaces;
    {
        Space all;
        for (std::size_t t = 0; t < r; ++t) {
            Vec v(r, 0);
            v[t] = 1;
            all.basis.push_back(std::move(v));
            all.pivots.push_back(t);
        }
        spaces.push_back(std::move(all));
    }
    for (std::size_t i = 1; i < r; ++i) {
        bool allSplit = true;
        for (const auto& s : spaces)
            if (s.basis.size() > 1) allSplit = false;
        if (allSplit) break;
        Mat B = classMatrix(i);
        std::vector<Space> next;
        for (auto& s : spaces) {
            const std::size_t m = s.basis.size();
            if (m == 1) {
                next.push_back(std::move(s));
                continue;
            }
            // Restriction of B to the (invariant) space in its basis.
            Mat R(m, Vec(m, 0));
            for (std::size_t t = 0; t < m; ++t) {
                Vec w(r, 0);
                for (std::size_t a = 0; a < r; ++a) {
                    if (s.basis[t][a] == 0) continue;
                    for (std::size_t b = 0; b < r; ++b)
                        w[b] = F.add(w[b], F.mul(B[b][a], s.basis[t][a]));
                }
                for (std::size_t u = 0; u < m; ++u) {
                    u64 c = w[s.pivots[u]];
                    R[u][t] = c;
                    if (c == 0) continue;
                    for (std::size_t j = 0; j < r; ++j)
                        w[j] = F.sub(w[j], F.mul(c, s.basis[u][j]));
                }
                for (u64 x : w)
                    if (x != 0) throw InternalError("class matrix left a common eigenspace");
            }
            std::vector<u64> eigs;
            poly_roots(F, minimal_polynomial(F, R), eigs);
            if (eigs.size() <= 1) {
                next.push_back(std::move(s));
                continue;
            }
            std::sort(eigs.begin(), eigs.end());
            std::size_t covered = 0;
            for (u64 lambda : eigs) {
                Space sub;
                Echelon ech{&F, {}, {}};
                for (Vec& kv : eigen_kernel(F, R, lambda)) {
                    Vec big(r, 0);
                    for (std::size_t t = 0; t < m; ++t) {
                        if (kv[t] == 0) continue;
                        for (std::size_t j = 0; j < r; ++j)
                            big[j] = F.add(big[j], F.mul(kv[t], s.basis[t][j]));
                    }
                    ech.add(big);
                }
                covered += ech.rows.size();
                sub.basis = std::move(ech.rows);
                sub.pivots = std::move(ech.pivots);
                if (!sub.basis.empty()) next.push_back(std::move(sub));
            }
            if (covered != m) throw InternalError("eigenspace split lost dimensions");
        }
        spaces = std::move(next);
    }
    if (spaces.size() != r) throw InternalError("class algebra did not split into lines");

    // Each line, scaled to 1 at the identity class, is the vector of central
    // character values omega(K_k) = size_k * chi(g_k) / chi(1) mod l.
    std::vector<std::size_t> invClass(r);
    for (std::size_t k = 0; k < r; ++k)
        invClass[k] = T.classes.classOf[g->inv(T.classes.representative[k])];
    std::vector<std::vector<std::size_t>> powClass(r, std::vector<std::size_t>(e));
    for (std::size_t k = 0; k < r; ++k)
        for (unsigned j = 0; j < e; ++j)
            powClass[k][j] = T.classes.classOf[g->pow(T.classes.representative[k], j)];

    u64 z = F.pow(primitive_root(F), (F.l - 1) / e);
    std::vector<u64> zpow(e);
    for (unsigned j = 0; j < e; ++j) zpow[j] = F.pow(z, j);
    const u64 invE = F.inv(e % F.l);

    unsigned degreeBound = 1;
    while (std::size_t(degreeBound + 1) * (degreeBound + 1) <= n) ++degreeBound;

    std::vector<CharacterRow> rows;
    u64 degreeSquares = 0;
    for (const auto& s : spaces) {
        const Vec& raw = s.basis[0];
        if (raw[0] == 0) throw InternalError("eigenvector vanishes at the identity class");
        u64 scale = F.inv(raw[0]);
        Vec omega(r);
        for (std::size_t k = 0; k < r; ++k) omega[k] = F.mul(raw[k], scale);

        u64 t = 0;
        for (std::size_t k = 0; k < r; ++k)
            t = F.add(t, F.mul(F.mul(omega[k], omega[invClass[k]]),
                               F.inv(T.classes.classSize[k] % F.l)));
        u64 dsq = F.mul(n % F.l, F.inv(t));
        unsigned degree = 0;
        for (unsigned d = 1; d <= degreeBound; ++d)
            if (F.mul(d, d) == dsq) {
                degree = d;
                break;
            }
        if (degree == 0) throw InternalError("no degree matches the eigenvalue data");
        degreeSquares += u64(degree) * degree;

        Vec chiMod(r);
        for (std::size_t k = 0; k < r; ++k)
            chiMod[k] = F.mul(F.mul(degree, omega[k]), F.inv(T.classes.classSize[k] % F.l));

        CharacterRow row;
        row.degree = degree;
        for (std::size_t k = 0; k < r; ++k) {
            CyclotomicInt value = cyc_zero(T.ring);
            u64 multSum = 0;
            for (unsigned mu = 0; mu < e; ++mu) {
                u64 m = 0;
                for (unsigned j = 0; j < e; ++j) {
                    u64 zexp = zpow[(e - (unsigned(std::size_t(j) * mu % e))) % e];
                    m = F.add(m, F.mul(chiMod[powClass[k][j]], zexp));
                }
                m = F.mul(m, invE);
                if (m > degree)
                    throw InternalError("root-of-unity multiplicity exceeds the degree");
                multSum += m;
                if (m == 0) continue;
                const auto& pw = T.ring->root_power(mu);
                for (unsigned c = 0; c < T.ring->degree(); ++c)
                    value.coeff[c] += std::int64_t(m) * pw[c];
            }
            if (multSum != degree)
                throw InternalError("root-of-unity multiplicities do not sum to the degree");
            row.values.push_back(std::move(value));
        }
        row.trivial = degree == 1;
        for (const auto& v : row.values)
            if (!v.is_integer(1)) {
                row.trivial = false;
                break;
            }
        rows.push_back(std::move(row));
    }

    if (degreeSquares != n) throw InternalError("character degrees do not sum to the order");

    std::sort(rows.begin(), rows.end(), [](const CharacterRow& a, const CharacterRow& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.trivial != b.trivial) return a.trivial;
        for (std::size_t k = 0; k < a.values.size(); ++k) {
            if (a.values[k].coeff == b.values[k].coeff) continue;
            return a.values[k].coeff < b.values[k].coeff;
        }
        return false;
    });
    T.rows = std::move(rows);
    if (T.rows.empty() || !T.rows[0].trivial)
        throw InternalError("trivial character is not the first row");

    // Exact row orthogonality on the lifted values.
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a; b < r; ++b) {
            CyclotomicInt sum = cyc_zero(T.ring);
            for (std::size_t k = 0; k < r; ++k)
                sum = sum + std::int64_t(T.classes.classSize[k]) *
                                (T.rows[a].values[k] * conj(T.rows[b].values[k]));
            if (!sum.is_integer(a == b ? std::int64_t(n) : 0))
                throw InternalError("row orthogonality failed for rows " + std::to_string(a) +
                                    " and " + std::to_string(b));
        }
    return T;
}

std::vector<std::size_t> vanishing_set(const CharacterTable& t, std::size_t row) {
    if (row >= t.rows.size()) throw ValidationError("row index out of range");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < t.rows[row].values.size(); ++k)
        if (t.rows[row].values[k].zero()) out.push_back(k);
    return out;
}

std::vector<std::size_t> irr_over(const CharacterTable& t, const SubgroupSet& h) {
    if (h.parent != t.group) throw ValidationError("subgroup belongs to a different group");
    if (!is_normal(t.group, h)) throw ValidationError("irr_over requires a normal subgroup");
    std::vector<std::size_t> out;
    for (std::size_t rowIdx = 0; rowIdx < t.rows.size(); ++rowIdx) {
        const auto& row = t.rows[rowIdx];
        bool inKernel = true;
        VOS_FOR_SET(x, h.members) {
            if (!row.values[t.classes.classOf[x]].is_integer(row.degree)) {
                inKernel = false;
                break;
            }
        }
        if (!inKernel) out.push_back(rowIdx);
    }
    return out;
}

SubgroupSet v_from_characters(const CharacterTable& t) {
    const std::size_t r = t.classes.count();
    std::vector<bool> classLive(r, false);
    for (const auto& row : t.rows) {
        if (row.degree <= 1) continue;
        for (std::size_t k = 0; k < r; ++k)
            if (!row.values[k].zero()) classLive[k] = true;
    }
    std::vector<Idx> gens;
    for (Idx x = 0; x < t.group->order(); ++x)
        if (classLive[t.classes.classOf[x]]) gens.push_back(x);
    return generated_subgroup(t.group, gens);
}

SubgroupSet v_from_characters(const GroupPtr& g, const CharTableOptions& opts) {
    return v_from_characters(character_table(g, opts));
}

} // namespace vos
