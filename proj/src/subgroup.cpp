#include "vos/subgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace vos {

namespace {

void require_parent(const GroupPtr& g, const SubgroupSet& s, const char* what) {
    if (!g || s.parent.get() != g.get())
        throw ValidationError(std::string(what) + ": subgroup belongs to a different group");
}

// closure of `seed` (must contain identity) under right multiplication by gens
void close_under(const GroupPtr& g, Bitset& seed, const std::vector<Idx>& gens) {
    std::vector<Idx> queue;
    VOS_FOR_SET(x, seed) queue.push_back(Idx(x));
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (Idx s : gens) {
            Idx y = g->mul(queue[q], s);
            if (!seed.test(y)) {
                seed.set(y);
                queue.push_back(y);
            }
        }
}

} // namespace

SubgroupSet trivial_subgroup(const GroupPtr& g) {
    Bitset b(g->order());
    b.set(0);
    return {g, b};
}

SubgroupSet full_subgroup(const GroupPtr& g) {
    Bitset b(g->order());
    for (Idx i = 0; i < g->order(); ++i) b.set(i);
    return {g, b};
}

SubgroupSet generated_subgroup(const GroupPtr& g, const std::vector<Idx>& gens) {
    for (Idx x : gens)
        if (x >= g->order()) throw ValidationError("generator index out of range");
    Bitset b(g->order());
    b.set(0);
    close_under(g, b, gens);
    return {g, b};
}

std::vector<Idx> small_generating_set(const SubgroupSet& h) {
    const GroupPtr& g = h.parent;
    std::vector<Idx> gens;
    Bitset span(g->order());
    span.set(0);
    VOS_FOR_SET(x, h.members) {
        if (span.test(x)) continue;
        gens.push_back(Idx(x));
        close_under(g, span, {Idx(x)});
    }
    return gens;
}

SubgroupSet commutator_subgroup(const GroupPtr& g, const SubgroupSet& h, const SubgroupSet& k) {
    require_parent(g, h, "commutator_subgroup");
    require_parent(g, k, "commutator_subgroup");
    std::vector<Idx> hg = small_generating_set(h);
    std::vector<Idx> kg = small_generating_set(k);
    std::vector<Idx> conjby = hg;
    conjby.insert(conjby.end(), kg.begin(), kg.end());

    std::vector<Idx> gens;
    for (Idx a : hg)
        for (Idx b : kg) gens.push_back(g->comm(a, b));
    Bitset span(g->order());
    span.set(0);
    close_under(g, span, gens);
    // normal closure under <H, K>
    std::size_t fringe = 0;
    while (fringe < gens.size()) {
        Idx s = gens[fringe++];
        for (Idx c : conjby) {
            Idx y = g->conj(s, c);
            if (!span.test(y)) {
                gens.push_back(y);
                close_under(g, span, {y});
            }
        }
    }
    return {g, span};
}

SubgroupSet centralizer(const GroupPtr& g, Idx x) {
    if (x >= g->order()) throw ValidationError("element index out of range");
    Bitset b(g->order());
    for (Idx y = 0; y < g->order(); ++y)
        if (g->mul(y, x) == g->mul(x, y)) b.set(y);
    return {g, b};
}

SubgroupSet centralizer_mod(const GroupPtr& g, const SubgroupSet& n, const SubgroupSet& h) {
    require_parent(g, n, "centralizer_mod");
    require_parent(g, h, "centralizer_mod");
    if (!is_normal(g, n)) throw ValidationError("centralizer_mod: modulus subgroup is not normal");
    std::vector<Idx> hg = small_generating_set(h);
    Bitset b(g->order());
    for (Idx y = 0; y < g->order(); ++y) {
        bool ok = true;
        for (Idx a : hg)
            if (!n.members.test(g->comm(y, a))) {
                ok = false;
                break;
            }
        if (ok) b.set(y);
    }
    return {g, b};
}

ConjugacyClassData conjugacy_classes(const GroupPtr& g) {
    ConjugacyClassData d;
    d.group = g;
    d.classOf.assign(g->order(), Idx(-1));
    for (Idx x = 0; x < g->order(); ++x) {
        if (d.classOf[x] != Idx(-1)) continue;
        Idx id = Idx(d.representative.size());
        d.representative.push_back(x);
        d.classOf[x] = id;
        std::vector<Idx> queue{x};
        Idx size = 1;
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (Idx gen : g->generators()) {
                Idx y = g->conj(queue[q], gen);
                if (d.classOf[y] == Idx(-1)) {
                    d.classOf[y] = id;
                    ++size;
                    queue.push_back(y);
                }
            }
        d.classSize.push_back(size);
        if (g->order() % size) throw InternalError("class size does not divide group order");
        d.centralizerOrder.push_back(g->order() / size);
    }
    return d;
}

SubgroupSet center(const GroupPtr& g) {
    Bitset b(g->order());
    for (Idx y = 0; y < g->order(); ++y) {
        bool c = true;
        for (Idx gen : g->generators())
            if (g->mul(y, gen) != g->mul(gen, y)) {
                c = false;
                break;
            }
        if (c) b.set(y);
    }
    return {g, b};
}

bool is_normal(const GroupPtr& g, const SubgroupSet& h) {
    require_parent(g, h, "is_normal");
    VOS_FOR_SET(x, h.members) {
        for (Idx gen : g->generators())
            if (!h.members.test(g->conj(Idx(x), gen))) return false;
    }
    return true;
}

/* section subspace enumeration */

namespace {

using Vec = std::vector<std::uint8_t>; // coordinates in F_p^d

unsigned long long gauss_binomial(unsigned d, unsigned k, unsigned p) {
    // [n choose k]_p via the recurrence [n,k] = [n-1,k-1] + p^k [n-1,k]
    std::vector<std::vector<unsigned long long>> t(d + 1,
                                                   std::vector<unsigned long long>(k + 1, 0));
    for (unsigned n = 0; n <= d; ++n) {
        t[n][0] = 1;
        for (unsigned j = 1; j <= std::min(n, k); ++j) {
            unsigned long long pj = 1;
            for (unsigned i = 0; i < j; ++i) pj *= p;
            t[n][j] = t[n - 1][j - 1] + pj * t[n - 1][j];
        }
    }
    return t[d][k];
}

// reduce v against RREF rows (pivots strictly increasing); true when v in span
bool reduces_to_zero(Vec v, const std::vector<Vec>& rows, const std::vector<unsigned>& pivots,
                     unsigned p) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        unsigned c = v[pivots[r]] % p;
        if (c) {
            // v -= c * row (row has pivot entry 1)
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = static_cast<std::uint8_t>((v[j] + (p - c) * rows[r][j]) % p);
        }
    }
    for (auto x : v)
        if (x % p) return false;
    return true;
}

struct SectionSpace {
    unsigned p = 0, d = 0;
    std::vector<Vec> action; // one d*d row-major matrix per parent generator
    std::vector<std::size_t> packedOf; // element of B (parent index) -> packed coord; npos outside B
};

Vec mat_apply(const Vec& m, const Vec& v, unsigned d, unsigned p) {
    Vec out(d, 0);
    for (unsigned i = 0; i < d; ++i) {
        if (!v[i]) continue;
        for (unsigned j = 0; j < d; ++j)
            out[j] = static_cast<std::uint8_t>((out[j] + v[i] * m[i * d + j]) % p);
    }
    return out;
}

std::size_t pack(const Vec& v, unsigned p) {
    std::size_t x = 0;
    for (auto c : v) x = x * p + c;
    return x;
}

} // namespace

std::vector<SubgroupSet> invariant_intermediate_subgroups(const GroupPtr& g, const SubgroupSet& a,
                                                          const SubgroupSet& b,
                                                          const EnumOptions& opts) {
    require_parent(g, a, "invariant_intermediate_subgroups");
    require_parent(g, b, "invariant_intermediate_subgroups");
    if (!a.members.subset_of(b.members))
        throw ValidationError("invariant_intermediate_subgroups: A is not contained in B");
    if (!is_normal(g, a) || !is_normal(g, b))
        throw ValidationError("invariant_intermediate_subgroups: A and B must be normal");
    const std::size_t orderA = a.order(), orderB = b.order();
    if (orderB % orderA) throw InternalError("subgroup order does not divide");
    std::size_t index = orderB / orderA;
    if (index == 1) return {};

    // the section prime and dimension
    unsigned p = 0;
    {
        std::size_t m = index;
        for (unsigned q = 2; q * q <= m; ++q)
            if (m % q == 0) {
                p = q;
                break;
            }
        if (!p) p = unsigned(m);
    }
    unsigned d = 0;
    {
        std::size_t m = index;
        while (m % p == 0) {
            m /= p;
            ++d;
        }
        if (m != 1)
            throw ValidationError("section is not elementary abelian: index " +
                                  std::to_string(index) + " is not a prime power");
    }

    // basis of B/A: extend the span one independent coset at a time
    std::vector<Idx> basis;
    Bitset span = a.members;
    VOS_FOR_SET(x, b.members) {
        if (span.test(x)) continue;
        // section must have exponent p and be abelian
        if (!a.members.test(g->pow(Idx(x), p)))
            throw ValidationError("section is not elementary abelian: element " +
                                  std::to_string(x) + " has p-th power outside A");
        for (Idx e : basis)
            if (!a.members.test(g->comm(Idx(x), e)))
                throw ValidationError("section is not elementary abelian: commutator outside A");
        basis.push_back(Idx(x));
        // new span = union of span * x^j
        Bitset next = span;
        Idx xp = Idx(x);
        for (unsigned j = 1; j < p; ++j) {
            VOS_FOR_SET(s, span) next.set(g->mul(Idx(s), xp));
            xp = g->mul(xp, Idx(x));
        }
        span = next;
    }
    if (basis.size() != d) throw InternalError("section basis has wrong size");

    // coordinates for every element of B
    SectionSpace sec;
    sec.p = p;
    sec.d = d;
    sec.packedOf.assign(g->order(), std::size_t(-1));
    {
        Vec tup(d, 0);
        while (true) {
            Idx rep = 0;
            for (unsigned i = 0; i < d; ++i)
                for (unsigned j = 0; j < tup[i]; ++j) rep = g->mul(rep, basis[i]);
            std::size_t packed = pack(tup, p);
            VOS_FOR_SET(an, a.members) sec.packedOf[g->mul(rep, Idx(an))] = packed;
            // next tuple
            int i = int(d) - 1;
            while (i >= 0 && tup[i] == p - 1) tup[i--] = 0;
            if (i < 0) break;
            ++tup[i];
        }
    }
    auto coord_of = [&](Idx x) {
        std::size_t packed = sec.packedOf[x];
        if (packed == std::size_t(-1)) throw InternalError("element outside section");
        Vec v(d);
        for (int i = int(d) - 1; i >= 0; --i) {
            v[i] = static_cast<std::uint8_t>(packed % p);
            packed /= p;
        }
        return v;
    };

    // conjugation action of each parent generator on the section
    for (Idx gen : g->generators()) {
        Vec m(std::size_t(d) * d, 0);
        for (unsigned i = 0; i < d; ++i) {
            Idx img = g->conj(basis[i], gen);
            if (!b.members.test(img))
                throw ValidationError("invariant_intermediate_subgroups: B is not normal");
            Vec c = coord_of(img);
            for (unsigned j = 0; j < d; ++j) m[i * d + j] = c[j];
        }
        sec.action.push_back(std::move(m));
    }

    // cap on the total subspace count
    unsigned long long total = 0;
    for (unsigned k = 0; k <= d; ++k) total += gauss_binomial(d, k, p);
    if (total > opts.subspaceCap)
        throw CapError("section too large: " + std::to_string(total) +
                       " subspaces exceed cap " + std::to_string(opts.subspaceCap));

    // enumerate proper subspaces as RREF matrices
    std::vector<SubgroupSet> out;
    std::vector<unsigned> pivots;
    std::vector<Vec> rows;

    auto emit_if_invariant = [&]() {
        for (const auto& m : sec.action)
            for (const auto& r : rows)
                if (!reduces_to_zero(mat_apply(m, r, d, p), rows, pivots, p)) return;
        // span of the rows, as packed vectors
        std::vector<std::size_t> spanPacked;
        Vec combo(rows.size(), 0);
        while (true) {
            Vec v(d, 0);
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (unsigned j = 0; j < d; ++j)
                    v[j] = static_cast<std::uint8_t>((v[j] + combo[r] * rows[r][j]) % p);
            spanPacked.push_back(pack(v, p));
            int i = int(combo.size()) - 1;
            while (i >= 0 && combo[i] == p - 1) combo[i--] = 0;
            if (i < 0) break;
            ++combo[i];
        }
        std::sort(spanPacked.begin(), spanPacked.end());
        Bitset members(g->order());
        VOS_FOR_SET(x, b.members) {
            if (std::binary_search(spanPacked.begin(), spanPacked.end(), sec.packedOf[x]))
                members.set(x);
        }
        out.push_back({g, members});
    };

    // all RREF matrices with k rows: choose pivot columns, then free entries
    for (unsigned k = 0; k < d; ++k) {
        std::vector<unsigned> cols(k);
        std::iota(cols.begin(), cols.end(), 0);
        auto nextCombination = [&]() {
            int i = int(k) - 1;
            while (i >= 0 && cols[i] == d - k + i) --i;
            if (i < 0) return false;
            ++cols[i];
            for (unsigned j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
            return true;
        };
        if (k == 0) {
            pivots.clear();
            rows.clear();
            emit_if_invariant(); // the zero subspace, i.e. N = A
            continue;
        }
        do {
            // free positions: (r, c) with c > cols[r] and c not a pivot
            std::vector<std::pair<unsigned, unsigned>> freePos;
            std::vector<bool> isPivot(d, false);
            for (unsigned c : cols) isPivot[c] = true;
            for (unsigned r = 0; r < k; ++r)
                for (unsigned c = cols[r] + 1; c < d; ++c)
                    if (!isPivot[c]) freePos.emplace_back(r, c);
            Vec fill(freePos.size(), 0);
            while (true) {
                rows.assign(k, Vec(d, 0));
                pivots.assign(cols.begin(), cols.end());
                for (unsigned r = 0; r < k; ++r) rows[r][cols[r]] = 1;
                for (std::size_t t = 0; t < freePos.size(); ++t)
                    rows[freePos[t].first][freePos[t].second] = fill[t];
                emit_if_invariant();
                int i = int(fill.size()) - 1;
                while (i >= 0 && fill[i] == p - 1) fill[i--] = 0;
                if (i < 0) break;
                ++fill[i];
            }
        } while (nextCombination());
    }

    std::sort(out.begin(), out.end(), [](const SubgroupSet& x, const SubgroupSet& y) {
        std::size_t cx = x.members.count(), cy = y.members.count();
        if (cx != cy) return cx < cy;
        return x.members.lex_less(y.members);
    });
    return out;
}

std::vector<unsigned> abelian_invariants(const SubgroupSet& h) {
    const GroupPtr& g = h.parent;
    std::vector<Idx> gens = small_generating_set(h);
    for (Idx x : gens)
        for (Idx y : gens)
            if (g->mul(x, y) != g->mul(y, x))
                throw ValidationError("abelian_invariants: subgroup is not abelian");
    std::vector<unsigned> orders;
    VOS_FOR_SET(x, h.members) orders.push_back(g->element_order(Idx(x)));
    std::size_t n = orders.size();
    std::map<unsigned, std::vector<unsigned>> byPrime; // p -> invariant exponents (descending ok)
    std::size_t m = n;
    for (unsigned p = 2; m > 1; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        // N_k = #elements with order dividing p^k
        std::vector<std::size_t> N{1};
        for (unsigned k = 1;; ++k) {
            unsigned long long pk = 1;
            for (unsigned i = 0; i < k; ++i) pk *= p;
            std::size_t cnt = 0;
            for (unsigned o : orders)
                if (pk % o == 0) ++cnt;
            N.push_back(cnt);
            if (cnt == N[k - 1]) break;
        }
        auto vp = [&](std::size_t v) {
            unsigned e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            return e;
        };
        std::vector<unsigned> a; // a[k] = #invariants with exponent >= k, 1-based
        for (std::size_t k = 1; k < N.size(); ++k) a.push_back(vp(N[k]) - vp(N[k - 1]));
        a.push_back(0);
        for (std::size_t k = 1; k < a.size(); ++k) {
            unsigned count = a[k - 1] - a[k];
            unsigned long long pk = 1;
            for (std::size_t i = 0; i < k; ++i) pk *= p;
            for (unsigned c = 0; c < count; ++c) byPrime[p].push_back(unsigned(pk));
        }
    }
    std::vector<unsigned> out;
    for (auto& [p, list] : byPrime) out.insert(out.end(), list.begin(), list.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace vos
