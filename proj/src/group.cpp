#include "vos/group.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace vos {

namespace {

struct BytesHash {
    template <class V>
    std::size_t operator()(const V& v) const {
        // FNV-1a over the value bytes
        std::size_t h = 1469598103934665603ull;
        const auto* p = reinterpret_cast<const unsigned char*>(v.data());
        std::size_t n = v.size() * sizeof(v[0]);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= p[i];
            h *= 1099511628211ull;
        }
        return h;
    }
};

Perm perm_mul(const Perm& a, const Perm& b) {
    // apply a first, then b
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
    return c;
}

// strictly-upper flat offset for entry (i,j), i < j < n
inline std::size_t up_off(unsigned n, unsigned i, unsigned j) {
    return std::size_t(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

UniMat mat_mul(unsigned n, unsigned p, const UniMat& a, const UniMat& b) {
    UniMat c(a.size());
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            unsigned s = a[up_off(n, i, j)] + b[up_off(n, i, j)];
            for (unsigned k = i + 1; k < j; ++k)
                s += a[up_off(n, i, k)] * b[up_off(n, k, j)];
            c[up_off(n, i, j)] = static_cast<std::uint8_t>(s % p);
        }
    return c;
}

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Breadth-first closure over an opaque element type. Index order: shortest
// word, ties by generator position, then by smaller left-factor index.
template <class E, class MulFn>
struct Closure {
    std::vector<E> elems;
    std::unordered_map<E, Idx, BytesHash> index;
    std::vector<Idx> gencol;                         // elems.size() x gens.size()
    std::vector<std::pair<Idx, unsigned>> parent;    // i>0 -> (left factor, gen position)
    std::vector<Idx> genIdx;

    Closure(const E& id, const std::vector<E>& gens, MulFn mul, std::size_t cap) {
        ngens_ = std::max<std::size_t>(gens.size(), 1);
        elems.push_back(id);
        index.emplace(id, 0);
        parent.emplace_back(0, 0);
        std::size_t lo = 0, hi = 1;
        while (lo < hi) {
            for (unsigned gp = 0; gp < gens.size(); ++gp)
                for (std::size_t x = lo; x < hi; ++x) {
                    E y = mul(elems[x], gens[gp]);
                    auto [it, fresh] = index.emplace(std::move(y), Idx(elems.size()));
                    if (fresh) {
                        if (elems.size() >= cap)
                            throw CapError("group too large: closure exceeded cap " +
                                           std::to_string(cap));
                        elems.push_back(it->first);
                        parent.emplace_back(Idx(x), gp);
                    }
                    record(Idx(x), gp, it->second);
                }
            lo = hi;
            hi = elems.size();
        }
        // products by generator for the elements discovered after their row
        // was sized; fill any holes directly
        for (std::size_t x = 0; x < elems.size(); ++x)
            for (unsigned gp = 0; gp < gens.size(); ++gp)
                if (at(x, gp) == kHole) {
                    E y = mul(elems[x], gens[gp]);
                    set(x, gp, index.at(y));
                }
        genIdx.reserve(gens.size());
        for (const auto& g : gens) genIdx.push_back(index.at(g));
    }

    Idx at(std::size_t x, unsigned gp) const {
        std::size_t k = x * ngens_ + gp;
        return k < gencol.size() ? gencol[k] : kHole;
    }

private:
    static constexpr Idx kHole = static_cast<Idx>(-1);
    std::size_t ngens_ = 1;

    void record(Idx x, unsigned gp, Idx y) {
        std::size_t k = std::size_t(x) * ngens_ + gp;
        if (gencol.size() <= k) gencol.resize(k + 1, kHole);
        gencol[k] = y;
    }

    void set(std::size_t x, unsigned gp, Idx y) { gencol[x * ngens_ + gp] = y; }
};

std::string cycle_notation(const Perm& q) {
    std::string out;
    std::vector<bool> seen(q.size(), false);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (seen[i] || q[i] == i) continue;
        out += '(';
        std::size_t j = i;
        bool first = true;
        do {
            if (!first) out += ' ';
            out += std::to_string(j);
            seen[j] = true;
            first = false;
            j = q[j];
        } while (j != i);
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::string mat_label(unsigned n, const UniMat& m) {
    std::string out = "I";
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            unsigned v = m[up_off(n, i, j)];
            if (!v) continue;
            out += '+';
            if (v != 1) out += std::to_string(v);
            out += "E(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        }
    return out;
}

} // namespace

/* Group built-in operations */

Idx Group::mul(Idx a, Idx b) const {
    if (a >= order_ || b >= order_) throw ValidationError("element index out of range");
    switch (rep_.index()) {
    case 0:
        return std::get<Cayley>(rep_).table[std::size_t(a) * order_ + b];
    case 1: {
        const auto& r = std::get<PermRep>(rep_);
        return lookup_perm(perm_mul(r.elems[a], r.elems[b]));
    }
    case 2: {
        const auto& r = std::get<MatRep>(rep_);
        return lookup_mat(mat_mul(r.n, r.p, r.elems[a], r.elems[b]));
    }
    default: {
        const auto& r = std::get<QuotientView>(rep_);
        return r.proj[r.source->mul(r.reps[a], r.reps[b])];
    }
    }
}

namespace {
// persistent lookup: indices sorted by concrete representation
template <class V>
Idx sorted_lookup(const std::vector<V>& elems, const std::vector<Idx>& order, const V& key) {
    auto it = std::lower_bound(order.begin(), order.end(), key,
                               [&](Idx i, const V& k) { return elems[i] < k; });
    if (it == order.end() || elems[*it] != key) throw InternalError("product left the group");
    return *it;
}
} // namespace

Idx Group::lookup_perm(const Perm& q) const {
    const auto& r = std::get<PermRep>(rep_);
    return sorted_lookup(r.elems, sorted_, q);
}

Idx Group::lookup_mat(const UniMat& m) const {
    const auto& r = std::get<MatRep>(rep_);
    return sorted_lookup(r.elems, sorted_, m);
}

Idx Group::pow(Idx g, long long n) const {
    if (n < 0) return pow(inv(g), -n);
    Idx acc = 0, base = g;
    while (n) {
        if (n & 1) acc = mul(acc, base);
        base = mul(base, base);
        n >>= 1;
    }
    return acc;
}

unsigned Group::element_order(Idx g) const {
    unsigned k = 1;
    Idx x = g;
    while (x != 0) {
        x = mul(x, g);
        ++k;
        if (k > order_) throw InternalError("element order exceeds group order");
    }
    return k;
}

unsigned Group::exponent() const {
    unsigned long long e = 1;
    for (Idx g = 0; g < order_; ++g)
        e = std::lcm(e, (unsigned long long)element_order(g));
    return static_cast<unsigned>(e);
}

bool Group::is_abelian() const {
    for (Idx a : gens_)
        for (Idx b : gens_)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::optional<unsigned> Group::prime() const {
    if (order_ < 2) return std::nullopt;
    unsigned m = order_;
    for (unsigned d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            while (m % d == 0) m /= d;
            return m == 1 ? std::optional<unsigned>(d) : std::nullopt;
        }
    return m; // order itself prime
}

std::string Group::element_label(Idx g) const {
    if (g >= order_) throw ValidationError("element index out of range");
    if (!labels_.empty()) return labels_[g];
    switch (rep_.index()) {
    case 1:
        return cycle_notation(std::get<PermRep>(rep_).elems[g]);
    case 2: {
        const auto& r = std::get<MatRep>(rep_);
        return mat_label(r.n, r.elems[g]);
    }
    case 3: {
        const auto& r = std::get<QuotientView>(rep_);
        return "[" + r.source->element_label(r.reps[g]) + "]";
    }
    default:
        return "g" + std::to_string(g);
    }
}

/* Element handles */

Element identity_of(const Group& g) { return {&g, 0}; }

static void check_same_owner(Element a, Element b) {
    if (a.owner == nullptr || b.owner == nullptr)
        throw ValidationError("element handle without an owning group");
    if (a.owner != b.owner)
        throw ValidationError("elements of different groups cannot be combined: '" +
                              a.owner->name() + "' vs '" + b.owner->name() + "'");
}

Element mul(Element a, Element b) {
    check_same_owner(a, b);
    return {a.owner, a.owner->mul(a.index, b.index)};
}

Element inv(Element a) {
    if (!a.owner) throw ValidationError("element handle without an owning group");
    return {a.owner, a.owner->inv(a.index)};
}

unsigned element_order(Element a) {
    if (!a.owner) throw ValidationError("element handle without an owning group");
    return a.owner->element_order(a.index);
}

/* construction helpers */

class GroupBuilder {
public:
    // Dense table from generator columns plus the word decomposition
    // j = parent(j) * gen(j); table[i][j] = gencol[table[i][parent]][gen].
    template <class C>
    static std::vector<Idx> dense_from_closure(const C& cl, std::size_t ngens) {
        const std::size_t n = cl.elems.size();
        std::vector<Idx> t(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            t[i * n] = Idx(i);
            for (std::size_t j = 1; j < n; ++j) {
                auto [par, gp] = cl.parent[j];
                t[i * n + j] = cl.at(t[i * n + par], gp);
            }
        }
        (void)ngens;
        return t;
    }

    // inv(x * g) = inv(g) * inv(x), walking words in discovery order
    template <class MulIdx>
    static std::vector<Idx> inverses(std::size_t n, const std::vector<std::pair<Idx, unsigned>>& parent,
                                     const std::vector<Idx>& genIdx, MulIdx mul) {
        std::vector<Idx> ginv(genIdx.size());
        for (std::size_t g = 0; g < genIdx.size(); ++g) {
            Idx x = genIdx[g], acc = 0;
            // g^(ord-1)
            Idx cur = x;
            while (cur != 0) {
                acc = cur;
                cur = mul(cur, x);
            }
            ginv[g] = acc;
        }
        std::vector<Idx> inv(n);
        inv[0] = 0;
        for (std::size_t j = 1; j < n; ++j) {
            auto [par, gp] = parent[j];
            inv[j] = mul(ginv[gp], inv[par]);
        }
        return inv;
    }

    template <class Rep>
    static GroupPtr finish_concrete(std::string name, Rep rep, const BuildOptions& opts,
                                    auto& cl, std::size_t ngens, auto mulConcrete) {
        const std::size_t n = cl.elems.size();
        auto g = std::shared_ptr<Group>(new Group());
        g->name_ = std::move(name);
        g->order_ = Idx(n);
        g->gens_ = cl.genIdx;
        if (n <= opts.denseCap) {
            Group::Cayley c{dense_from_closure(cl, ngens)};
            const auto& t = c.table;
            g->inv_ = inverses(n, cl.parent, cl.genIdx,
                               [&](Idx a, Idx b) { return t[std::size_t(a) * n + b]; });
            g->labels_.reserve(n);
            for (std::size_t i = 0; i < n; ++i) g->labels_.push_back(labelOf(rep, cl.elems[i]));
            g->rep_ = std::move(c);
        } else {
            rep.elems = std::move(cl.elems);
            g->sorted_.resize(n);
            for (std::size_t i = 0; i < n; ++i) g->sorted_[i] = Idx(i);
            std::sort(g->sorted_.begin(), g->sorted_.end(),
                      [&](Idx a, Idx b) { return rep.elems[a] < rep.elems[b]; });
            g->inv_ = inverses(n, cl.parent, cl.genIdx, [&](Idx a, Idx b) {
                auto y = mulConcrete(rep.elems[a], rep.elems[b]);
                return sorted_lookup(rep.elems, g->sorted_, y);
            });
            g->rep_ = std::move(rep);
        }
        return g;
    }

    static std::string labelOf(const Group::PermRep&, const Perm& p) { return cycle_notation(p); }
    static std::string labelOf(const Group::MatRep& r, const UniMat& m) { return mat_label(r.n, m); }

    static GroupPtr finish_perm(std::string name, unsigned degree, const BuildOptions& opts,
                                auto& cl, std::size_t ngens, auto mulConcrete) {
        Group::PermRep rep;
        rep.degree = degree;
        return finish_concrete(std::move(name), std::move(rep), opts, cl, ngens, mulConcrete);
    }

    static GroupPtr finish_mat(std::string name, unsigned n, unsigned p, const BuildOptions& opts,
                               auto& cl, std::size_t ngens, auto mulConcrete) {
        Group::MatRep rep;
        rep.n = n;
        rep.p = p;
        return finish_concrete(std::move(name), std::move(rep), opts, cl, ngens, mulConcrete);
    }

    // Canonical reindexing of an explicit multiplication table. Raw index 0
    // must be the identity and rawGens must generate everything.
    static GroupPtr from_raw_table(std::string name, std::size_t n, const std::vector<Idx>& raw,
                                   const std::vector<Idx>& rawGens, const BuildOptions& opts) {
        if (n > opts.denseCap)
            throw CapError("group too large: dense cap " + std::to_string(opts.denseCap));
        std::vector<Idx> toRaw;   // canonical -> raw
        std::vector<Idx> toCan(n, Idx(-1));
        toRaw.push_back(0);
        toCan[0] = 0;
        std::vector<std::pair<Idx, unsigned>> parent{{0, 0}};
        std::size_t lo = 0, hi = 1;
        while (lo < hi) {
            for (unsigned gp = 0; gp < rawGens.size(); ++gp)
                for (std::size_t x = lo; x < hi; ++x) {
                    Idx y = raw[std::size_t(toRaw[x]) * n + rawGens[gp]];
                    if (toCan[y] == Idx(-1)) {
                        toCan[y] = Idx(toRaw.size());
                        toRaw.push_back(y);
                        parent.emplace_back(Idx(x), gp);
                    }
                }
            lo = hi;
            hi = toRaw.size();
        }
        if (toRaw.size() != n) throw InternalError("raw generators do not generate the table");
        auto g = std::shared_ptr<Group>(new Group());
        g->name_ = std::move(name);
        g->order_ = Idx(n);
        Group::Cayley c;
        c.table.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                c.table[i * n + j] = toCan[raw[std::size_t(toRaw[i]) * n + toRaw[j]]];
        for (Idx rg : rawGens) g->gens_.push_back(toCan[rg]);
        const auto& t = c.table;
        std::vector<Idx> genIdx = g->gens_;
        g->inv_ = inverses(n, parent, genIdx,
                           [&](Idx a, Idx b) { return t[std::size_t(a) * n + b]; });
        g->rep_ = std::move(c);
        return g;
    }

    static GroupPtr make_quotient(const GroupPtr& src, const std::vector<Idx>& reps,
                                  const std::vector<Idx>& proj, const BuildOptions& opts);
};

/* permutation groups */

GroupPtr build_from_permutations(const std::string& name, unsigned degree,
                                 const std::vector<std::vector<unsigned>>& gens,
                                 const BuildOptions& opts) {
    if (degree == 0 || degree > 65535)
        throw ValidationError("permutation degree must be in [1, 65535]");
    std::vector<Perm> pg;
    for (const auto& g : gens) {
        if (g.size() != degree)
            throw ValidationError("generator length " + std::to_string(g.size()) +
                                  " does not match degree " + std::to_string(degree));
        std::vector<bool> hit(degree, false);
        Perm q(degree);
        for (unsigned i = 0; i < degree; ++i) {
            if (g[i] >= degree || hit[g[i]])
                throw ValidationError("generator is not a permutation of 0.." +
                                      std::to_string(degree - 1));
            hit[g[i]] = true;
            q[i] = static_cast<std::uint16_t>(g[i]);
        }
        pg.push_back(std::move(q));
    }
    Perm id(degree);
    for (unsigned i = 0; i < degree; ++i) id[i] = static_cast<std::uint16_t>(i);
    auto mulfn = [](const Perm& a, const Perm& b) { return perm_mul(a, b); };
    Closure<Perm, decltype(mulfn)> cl(id, pg, mulfn, opts.blackboxCap);
    return GroupBuilder::finish_perm(name, degree, opts, cl, pg.size(), mulfn);
}

/* unitriangular matrix groups */

static void check_unitriangular_params(unsigned n, unsigned p) {
    if (n < 2 || n > 16) throw ValidationError("matrix size must be in [2, 16]");
    if (!is_prime(p) || p > 251) throw ValidationError("p must be a prime in [2, 251]");
}

GroupPtr build_from_unitriangular_generators(const std::string& name, unsigned n, unsigned p,
                                             const std::vector<UniMat>& gens,
                                             const BuildOptions& opts) {
    check_unitriangular_params(n, p);
    const std::size_t sz = std::size_t(n) * (n - 1) / 2;
    for (const auto& m : gens) {
        if (m.size() != sz) throw ValidationError("generator matrix has wrong shape");
        for (auto v : m)
            if (v >= p) throw ValidationError("matrix entry not reduced mod p");
    }
    UniMat id(sz, 0);
    auto mulfn = [n, p](const UniMat& a, const UniMat& b) { return mat_mul(n, p, a, b); };
    Closure<UniMat, decltype(mulfn)> cl(id, gens, mulfn, opts.blackboxCap);
    return GroupBuilder::finish_mat(name, n, p, opts, cl, gens.size(), mulfn);
}

GroupPtr build_unitriangular(unsigned n, unsigned p, const BuildOptions& opts) {
    check_unitriangular_params(n, p);
    // order = p^(n(n-1)/2); fail early when it cannot fit
    unsigned long long ord = 1;
    for (unsigned k = 0; k < n * (n - 1) / 2; ++k) {
        ord *= p;
        if (ord > opts.blackboxCap)
            throw CapError("group too large: closure exceeded cap " +
                           std::to_string(opts.blackboxCap));
    }
    std::vector<UniMat> gens;
    const std::size_t sz = std::size_t(n) * (n - 1) / 2;
    for (unsigned i = 0; i + 1 < n; ++i) {
        UniMat m(sz, 0);
        m[up_off(n, i, i + 1)] = 1;
        gens.push_back(std::move(m));
    }
    std::string name = "UT(" + std::to_string(n) + "," + std::to_string(p) + ")";
    return build_from_unitriangular_generators(name, n, p, gens, opts);
}

/* table-model families */

namespace {

struct RawModel {
    std::size_t n = 0;
    std::vector<Idx> table;
    std::vector<Idx> gens;
};

RawModel raw_cyclic(unsigned n) {
    RawModel m;
    m.n = n;
    m.table.resize(std::size_t(n) * n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) m.table[std::size_t(i) * n + j] = (i + j) % n;
    m.gens.push_back(n > 1 ? 1 : 0);
    return m;
}

RawModel raw_abelian(const std::vector<unsigned>& factors) {
    std::size_t n = 1;
    for (unsigned f : factors) {
        if (f == 0) throw ValidationError("abelian factor must be positive");
        n *= f;
    }
    RawModel m;
    m.n = n;
    m.table.resize(n * n);
    auto add = [&](std::size_t a, std::size_t b) {
        std::size_t r = 0, mult = 1;
        for (unsigned f : factors) {
            std::size_t x = a % f, y = b % f;
            r += ((x + y) % f) * mult;
            a /= f;
            b /= f;
            mult *= f;
        }
        return r;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.table[i * n + j] = Idx(add(i, j));
    std::size_t mult = 1;
    for (unsigned f : factors) {
        if (f > 1) m.gens.push_back(Idx(mult));
        mult *= f;
    }
    if (m.gens.empty()) m.gens.push_back(0);
    return m;
}

// elements r^i s^e; s r = r^-1 s
RawModel raw_dihedral(unsigned mrot) {
    std::size_t n = 2 * std::size_t(mrot);
    RawModel m;
    m.n = n;
    m.table.resize(n * n);
    auto enc = [mrot](unsigned i, unsigned e) { return Idx(e * mrot + i); };
    for (unsigned e = 0; e < 2; ++e)
        for (unsigned i = 0; i < mrot; ++i)
            for (unsigned f = 0; f < 2; ++f)
                for (unsigned j = 0; j < mrot; ++j) {
                    unsigned ri = e == 0 ? (i + j) % mrot : (i + mrot - j % mrot) % mrot;
                    m.table[std::size_t(enc(i, e)) * n + enc(j, f)] = enc(ri, e ^ f);
                }
    if (mrot > 1) m.gens.push_back(enc(1, 0));
    m.gens.push_back(enc(0, 1));
    return m;
}

// elements a^i b^e with a^(2m) = 1, b^2 = a^m, b^-1 a b = a^-1
RawModel raw_quaternion(unsigned m4) {
    unsigned twoM = 2 * m4;
    std::size_t n = 2 * std::size_t(twoM);
    RawModel m;
    m.n = n;
    m.table.resize(n * n);
    auto enc = [twoM](unsigned i, unsigned e) { return Idx(e * twoM + i); };
    for (unsigned e = 0; e < 2; ++e)
        for (unsigned i = 0; i < twoM; ++i)
            for (unsigned f = 0; f < 2; ++f)
                for (unsigned j = 0; j < twoM; ++j) {
                    unsigned ri, re;
                    if (e == 0) {
                        ri = (i + j) % twoM;
                        re = f;
                    } else if (f == 0) {
                        ri = (i + twoM - j % twoM) % twoM;
                        re = 1;
                    } else {
                        ri = (i + twoM - j % twoM + m4) % twoM;
                        re = 0;
                    }
                    m.table[std::size_t(enc(i, e)) * n + enc(j, f)] = enc(ri, re);
                }
    m.gens.push_back(enc(1, 0));
    m.gens.push_back(enc(0, 1));
    return m;
}

// a of order p^2, b of order p, b^-1 a b = a^(1+p)
RawModel raw_extraspecial_exp_p2(unsigned p) {
    unsigned p2 = p * p;
    std::size_t n = std::size_t(p2) * p;
    RawModel m;
    m.n = n;
    m.table.resize(n * n);
    std::vector<unsigned> onePlusPpow(p, 1);
    for (unsigned j = 1; j < p; ++j) onePlusPpow[j] = (onePlusPpow[j - 1] * (1 + p)) % p2;
    auto enc = [p2](unsigned i, unsigned j) { return Idx(j * p2 + i); };
    for (unsigned j = 0; j < p; ++j)
        for (unsigned i = 0; i < p2; ++i)
            for (unsigned l = 0; l < p; ++l)
                for (unsigned k = 0; k < p2; ++k)
                    m.table[std::size_t(enc(i, j)) * n + enc(k, l)] =
                        enc((i + k * onePlusPpow[j]) % p2, (j + l) % p);
    m.gens.push_back(enc(1, 0));
    m.gens.push_back(enc(0, 1));
    return m;
}

} // namespace

GroupPtr build_cyclic(unsigned n, const BuildOptions& opts) {
    if (n == 0) throw ValidationError("cyclic order must be positive");
    if (n > opts.denseCap) throw CapError("group too large: dense cap " + std::to_string(opts.denseCap));
    auto m = raw_cyclic(n);
    return GroupBuilder::from_raw_table("C" + std::to_string(n), m.n, m.table, m.gens, opts);
}

GroupPtr build_abelian(const std::vector<unsigned>& factors, const BuildOptions& opts) {
    auto m = raw_abelian(factors);
    if (m.n > opts.denseCap) throw CapError("group too large: dense cap " + std::to_string(opts.denseCap));
    std::string name = "Ab[";
    for (std::size_t i = 0; i < factors.size(); ++i)
        name += (i ? "," : "") + std::to_string(factors[i]);
    name += "]";
    return GroupBuilder::from_raw_table(name, m.n, m.table, m.gens, opts);
}

GroupPtr build_dihedral(unsigned order, const BuildOptions& opts) {
    if (order < 2 || order % 2) throw ValidationError("dihedral order must be even and >= 2");
    if (order > opts.denseCap) throw CapError("group too large: dense cap " + std::to_string(opts.denseCap));
    auto m = raw_dihedral(order / 2);
    return GroupBuilder::from_raw_table("D" + std::to_string(order), m.n, m.table, m.gens, opts);
}

GroupPtr build_quaternion(unsigned order, const BuildOptions& opts) {
    if (order < 8 || order % 4) throw ValidationError("quaternion order must be >= 8 and divisible by 4");
    if (order > opts.denseCap) throw CapError("group too large: dense cap " + std::to_string(opts.denseCap));
    auto m = raw_quaternion(order / 4);
    return GroupBuilder::from_raw_table("Q" + std::to_string(order), m.n, m.table, m.gens, opts);
}

GroupPtr build_extraspecial(unsigned p, unsigned exponent, char type, const BuildOptions& opts) {
    if (!is_prime(p)) throw ValidationError("extraspecial parameter p must be prime");
    if (p == 2) {
        if (exponent != 4) throw ValidationError("extraspecial 2-group has exponent 4");
        if (type != '+' && type != '-') throw ValidationError("type must be '+' or '-' for p = 2");
        auto m = type == '+' ? raw_dihedral(4) : raw_quaternion(2);
        return GroupBuilder::from_raw_table(std::string("ES(8,") + type + ")", m.n, m.table,
                                            m.gens, opts);
    }
    if (exponent == p) {
        std::vector<UniMat> gens;
        UniMat a(3, 0), b(3, 0);
        a[up_off(3, 0, 1)] = 1;
        b[up_off(3, 1, 2)] = 1;
        gens.push_back(a);
        gens.push_back(b);
        return build_from_unitriangular_generators(
            "ES(" + std::to_string(p * p * p) + ",e" + std::to_string(p) + ")", 3, p, gens, opts);
    }
    if (exponent == p * p) {
        if (std::size_t(p) * p * p > opts.denseCap)
            throw CapError("group too large: dense cap " + std::to_string(opts.denseCap));
        auto m = raw_extraspecial_exp_p2(p);
        return GroupBuilder::from_raw_table(
            "ES(" + std::to_string(p * p * p) + ",e" + std::to_string(p * p) + ")", m.n, m.table,
            m.gens, opts);
    }
    throw ValidationError("extraspecial exponent must be p or p^2");
}

GroupPtr build_from_cayley_table(const std::string& name, const std::vector<Idx>& table,
                                 const BuildOptions& opts) {
    std::size_t n = 0;
    while (n * n < table.size()) ++n;
    if (n == 0 || n * n != table.size())
        throw ValidationError("table length " + std::to_string(table.size()) +
                              " is not a positive square");
    if (n > opts.denseCap)
        throw CapError("group too large: dense cap " + std::to_string(opts.denseCap));
    auto at = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };
    for (Idx v : table)
        if (v >= n) throw ValidationError("table entry " + std::to_string(v) + " out of range");
    for (std::size_t j = 0; j < n; ++j)
        if (at(0, j) != j || at(j, 0) != j)
            throw ValidationError("table index 0 must be the identity");
    std::vector<bool> seen(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), false);
        for (std::size_t j = 0; j < n; ++j) {
            if (seen[at(i, j)]) throw ValidationError("row " + std::to_string(i) +
                                                      " is not a permutation");
            seen[at(i, j)] = true;
        }
        std::fill(seen.begin(), seen.end(), false);
        for (std::size_t j = 0; j < n; ++j) {
            if (seen[at(j, i)]) throw ValidationError("column " + std::to_string(i) +
                                                      " is not a permutation");
            seen[at(j, i)] = true;
        }
    }
    // Greedy generating set over the raw table: scan ascending, keep each
    // element not already generated, and reclose.
    std::vector<Idx> gens;
    std::vector<bool> closed(n, false);
    std::vector<Idx> members{0};
    std::vector<Idx> queue;
    closed[0] = true;
    for (std::size_t cand = 1; cand < n && members.size() < n; ++cand) {
        if (closed[cand]) continue;
        gens.push_back(Idx(cand));
        closed[cand] = true;
        members.push_back(Idx(cand));
        queue.assign(1, Idx(cand));
        while (!queue.empty()) {
            Idx x = queue.back();
            queue.pop_back();
            for (std::size_t t = 0; t < members.size(); ++t) {
                Idx y = members[t];
                Idx prods[2] = {at(x, y), at(y, x)};
                for (Idx z : prods)
                    if (!closed[z]) {
                        closed[z] = true;
                        members.push_back(z);
                        queue.push_back(z);
                    }
            }
        }
    }
    if (gens.empty()) gens.push_back(0);
    // Light's associativity test: with the Latin-square property established,
    // checking (x*s)*y = x*(s*y) for every generator s suffices.
    for (Idx s : gens)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (at(at(x, s), y) != at(x, at(s, y)))
                    throw ValidationError("table is not associative at (" + std::to_string(x) +
                                          ", " + std::to_string(s) + ", " + std::to_string(y) +
                                          ")");
    return GroupBuilder::from_raw_table(name, n, table, gens, opts);
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b, const BuildOptions& opts) {
    if (!a || !b) throw ValidationError("direct_product requires two groups");
    std::size_t n = std::size_t(a->order()) * b->order();
    if (n > opts.denseCap)
        throw CapError("group too large: dense cap " + std::to_string(opts.denseCap));
    RawModel m;
    m.n = n;
    m.table.resize(n * n);
    const Idx nb = b->order();
    for (Idx x1 = 0; x1 < a->order(); ++x1)
        for (Idx x2 = 0; x2 < nb; ++x2)
            for (Idx y1 = 0; y1 < a->order(); ++y1)
                for (Idx y2 = 0; y2 < nb; ++y2)
                    m.table[(std::size_t(x1) * nb + x2) * n + (std::size_t(y1) * nb + y2)] =
                        a->mul(x1, y1) * nb + b->mul(x2, y2);
    for (Idx g : a->generators()) m.gens.push_back(g * nb);
    for (Idx g : b->generators()) m.gens.push_back(g);
    return GroupBuilder::from_raw_table(a->name() + "x" + b->name(), n, m.table, m.gens, opts);
}

/* quotients */

GroupPtr GroupBuilder::make_quotient(const GroupPtr& src, const std::vector<Idx>& reps,
                                     const std::vector<Idx>& proj, const BuildOptions& opts) {
    const std::size_t n = reps.size();
    auto g = std::shared_ptr<Group>(new Group());
    g->name_ = src->name() + "/N" + std::to_string(src->order() / n);
    g->order_ = Idx(n);
    for (Idx sg : src->generators()) {
        Idx img = proj[sg];
        if (img == 0) continue;
        if (std::find(g->gens_.begin(), g->gens_.end(), img) == g->gens_.end())
            g->gens_.push_back(img);
    }
    auto mulQ = [&](Idx x, Idx y) { return proj[src->mul(reps[x], reps[y])]; };
    if (n <= opts.denseCap) {
        Group::Cayley c;
        c.table.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c.table[i * n + j] = mulQ(Idx(i), Idx(j));
        g->labels_.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            g->labels_.push_back("[" + src->element_label(reps[i]) + "]");
        g->rep_ = std::move(c);
    } else {
        Group::QuotientView qv{src, reps, proj};
        g->rep_ = std::move(qv);
    }
    g->inv_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g->mul(Idx(i), Idx(j)) == 0) {
                g->inv_[i] = Idx(j);
                break;
            }
    // generated check: the filtered generator images must reach every coset
    Bitset seen(n);
    seen.set(0);
    std::vector<Idx> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q)
        for (Idx gen : g->gens_) {
            Idx y = g->mul(queue[q], gen);
            if (!seen.test(y)) {
                seen.set(y);
                queue.push_back(y);
            }
        }
    if (seen.count() != n) throw InternalError("quotient generator images do not generate");
    return g;
}

QuotientMap quotient(const GroupPtr& g, const Bitset& normalSubgroup, const BuildOptions& opts) {
    if (!g) throw ValidationError("quotient requires a group");
    const Idx n = g->order();
    if (normalSubgroup.size() != n)
        throw ValidationError("kernel bitset size does not match group order");
    if (!normalSubgroup.test(0)) throw ValidationError("kernel must contain the identity");
    // subgroup closure
    VOS_FOR_SET(x, normalSubgroup) {
        VOS_FOR_SET(y, normalSubgroup) {
            if (!normalSubgroup.test(g->mul(Idx(x), Idx(y))))
                throw ValidationError("kernel is not closed under multiplication");
        }
    }
    // normality, with witness
    VOS_FOR_SET(x, normalSubgroup) {
        for (Idx gen : g->generators()) {
            Idx c = g->conj(Idx(x), gen);
            if (!normalSubgroup.test(c))
                throw ValidationError("kernel is not normal: conj of n=" + std::to_string(x) +
                                      " (" + g->element_label(Idx(x)) + ") by g=" +
                                      std::to_string(gen) + " (" + g->element_label(gen) +
                                      ") lands outside");
        }
    }
    std::vector<Idx> proj(n, Idx(-1));
    std::vector<Idx> reps;
    for (Idx x = 0; x < n; ++x) {
        if (proj[x] != Idx(-1)) continue;
        Idx id = Idx(reps.size());
        reps.push_back(x);
        VOS_FOR_SET(nn, normalSubgroup) { proj[g->mul(x, Idx(nn))] = id; }
    }
    QuotientMap qm;
    qm.source = g;
    qm.kernel = normalSubgroup;
    qm.proj = proj;
    qm.target = GroupBuilder::make_quotient(g, reps, proj, opts);
    return qm;
}

Bitset QuotientMap::preimage(const Bitset& S) const {
    Bitset out(source->order());
    for (Idx x = 0; x < source->order(); ++x)
        if (S.test(proj[x])) out.set(x);
    return out;
}

/* subgroup extraction */

GroupPtr extract_subgroup(const GroupPtr& g, const Bitset& members, const std::string& name,
                          const BuildOptions& opts) {
    if (!g) throw ValidationError("extract_subgroup requires a group");
    if (members.size() != g->order()) throw ValidationError("membership bitset size mismatch");
    if (!members.test(0)) throw ValidationError("subgroup must contain the identity");
    std::vector<Idx> toSrc;
    std::vector<Idx> pos(g->order(), Idx(-1));
    VOS_FOR_SET(x, members) {
        pos[x] = Idx(toSrc.size());
        toSrc.push_back(Idx(x));
    }
    const std::size_t n = toSrc.size();
    if (n > opts.denseCap)
        throw CapError("group too large: dense cap " + std::to_string(opts.denseCap));
    std::vector<Idx> raw(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Idx z = g->mul(toSrc[i], toSrc[j]);
            if (pos[z] == Idx(-1))
                throw ValidationError("set is not closed under multiplication");
            raw[i * n + j] = pos[z];
        }
    // greedy generating set over the raw table
    std::vector<Idx> gens;
    std::vector<bool> reach(n, false);
    reach[0] = true;
    std::size_t reached = 1;
    auto expand = [&]() {
        std::vector<Idx> queue;
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i]) queue.push_back(Idx(i));
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (Idx gen : gens) {
                Idx y = raw[std::size_t(queue[q]) * n + gen];
                if (!reach[y]) {
                    reach[y] = true;
                    ++reached;
                    queue.push_back(y);
                }
            }
    };
    for (std::size_t x = 1; x < n && reached < n; ++x)
        if (!reach[x]) {
            gens.push_back(Idx(x));
            expand();
        }
    if (gens.empty()) gens.push_back(0);
    return GroupBuilder::from_raw_table(name, n, raw, gens, opts);
}

} // namespace vos
