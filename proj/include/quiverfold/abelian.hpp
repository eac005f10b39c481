#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "intmat.hpp"
#include "rational.hpp"

namespace quiverfold {

// Exponent vector relative to the ambient group's cyclic-factor basis.
using GroupElt = std::vector<long long>;

// G = Z/m1 x ... x Z/mn with the factor basis fixed once per computation.
struct AbelianGroup {
    std::vector<long long> orders;

    explicit AbelianGroup(std::vector<long long> m = {}) : orders(std::move(m)) {
        for (long long v : orders)
            if (v < 1) throw std::invalid_argument("AbelianGroup: orders must be >= 1");
    }

    int num_factors() const { return static_cast<int>(orders.size()); }

    long long order() const {
        long long p = 1;
        for (long long m : orders) p *= m;
        return p;
    }

    long long exponent() const {
        long long l = 1;
        for (long long m : orders) l = ll_lcm(l, m);
        return l;
    }

    GroupElt identity() const { return GroupElt(orders.size(), 0); }

    GroupElt reduce(GroupElt g) const {
        for (size_t i = 0; i < orders.size(); ++i) g[i] = mod_nonneg(g[i], orders[i]);
        return g;
    }

    GroupElt add(const GroupElt& a, const GroupElt& b) const {
        GroupElt c(orders.size());
        for (size_t i = 0; i < orders.size(); ++i) c[i] = mod_nonneg(a[i] + b[i], orders[i]);
        return c;
    }

    GroupElt neg(const GroupElt& a) const {
        GroupElt c(orders.size());
        for (size_t i = 0; i < orders.size(); ++i) c[i] = mod_nonneg(-a[i], orders[i]);
        return c;
    }

    GroupElt mul_int(const GroupElt& a, long long k) const {
        GroupElt c(orders.size());
        for (size_t i = 0; i < orders.size(); ++i)
            c[i] = mod_nonneg(a[i] * mod_nonneg(k, orders[i]), orders[i]);
        return c;
    }

    long long order_of(const GroupElt& g) const {
        long long o = 1;
        for (size_t i = 0; i < orders.size(); ++i)
            o = ll_lcm(o, orders[i] / ll_gcd(orders[i], mod_nonneg(g[i], orders[i])));
        return o;
    }

    std::vector<GroupElt> all_elements() const {
        if (order() > 100000) throw std::invalid_argument("AbelianGroup: enumeration too large");
        std::vector<GroupElt> out;
        GroupElt cur = identity();
        while (true) {
            out.push_back(cur);
            int i = num_factors() - 1;
            while (i >= 0) {
                if (++cur[i] < orders[i]) break;
                cur[i] = 0;
                --i;
            }
            if (i < 0) break;
        }
        return out;
    }

    bool same_as(const AbelianGroup& o) const { return orders == o.orders; }
};

// Character of the ambient group: chi(g') = prod_i xi_i^{s_i t_i} with
// xi_i = zeta_L^{L/m_i}.  Stored as the exponent vector s.
struct Character {
    GroupElt exponents;
};

// chi_g(g') exponent at an explicit level (must be a multiple of exponent(G)).
inline long long pairing_at_level(const AbelianGroup& g, const GroupElt& a, const GroupElt& b,
                                  long long level) {
    if (a.size() != g.orders.size() || b.size() != g.orders.size())
        throw std::invalid_argument("pairing: element size mismatch");
    if (level % g.exponent() != 0) throw std::invalid_argument("pairing: bad level");
    long long k = 0;
    for (size_t i = 0; i < g.orders.size(); ++i) {
        long long xi = level / g.orders[i];
        k = mod_nonneg(k + xi * mod_nonneg(a[i] * b[i], g.orders[i]), level);
    }
    return k;
}

// Default pairing, at the canonical level L = exponent of G.
inline long long pairing(const AbelianGroup& g, const GroupElt& a, const GroupElt& b) {
    return pairing_at_level(g, a, b, g.exponent());
}

// Subgroup of a fixed ambient group, canonicalized through Smith normal
// form so that arbitrary stabilizers regain a product form: H is the image
// of the lattice rowspan(generators) + diag(orders)Z^n.
struct Subgroup {
    AbelianGroup ambient;
    IntMat lattice_basis;          // rows b_i: basis of the preimage lattice
    std::vector<long long> diag_d; // SNF diagonal of the stacked matrix
    IntMat snf_v;                  // column transform of the stacked matrix
    std::vector<long long> factors;     // invariant factors f_j of H itself
    std::vector<GroupElt> can_gens;     // canonical generators, order f_j
    IntMat coord_m2;  // lattice coords -> canonical coords: t = y * v2 mod f

    long long order() const {
        long long o = 1;
        for (long long f : factors) o *= f;
        return o;
    }

    long long exponent() const {
        long long l = 1;
        for (long long f : factors) l = ll_lcm(l, f);
        return l;
    }

    bool contains(const GroupElt& x) const {
        if (x.size() != ambient.orders.size()) return false;
        int n = ambient.num_factors();
        for (int i = 0; i < n; ++i) {
            long long w = 0;
            for (int k = 0; k < n; ++k) w += x[k] * snf_v.at(k, i);
            if (w % diag_d[i] != 0) return false;
        }
        return true;
    }

    // Coordinates of a member in the canonical-generator basis (mod f_j).
    std::vector<long long> coords(const GroupElt& x) const {
        int n = ambient.num_factors();
        std::vector<long long> y(n);
        for (int i = 0; i < n; ++i) {
            long long w = 0;
            for (int k = 0; k < n; ++k) w += x[k] * snf_v.at(k, i);
            if (w % diag_d[i] != 0) throw std::invalid_argument("Subgroup::coords: not a member");
            y[i] = w / diag_d[i];
        }
        std::vector<long long> t(n);
        for (int j = 0; j < n; ++j) {
            long long s = 0;
            for (int i = 0; i < n; ++i) s += y[i] * coord_m2.at(i, j);
            t[j] = factors[j] == 0 ? 0 : mod_nonneg(s, factors[j]);
        }
        return t;
    }

    std::vector<GroupElt> all_elements() const {
        if (order() > 100000) throw std::invalid_argument("Subgroup: enumeration too large");
        std::vector<GroupElt> out;
        int n = static_cast<int>(factors.size());
        std::vector<long long> t(n, 0);
        while (true) {
            GroupElt e = ambient.identity();
            for (int j = 0; j < n; ++j)
                if (t[j] != 0) e = ambient.add(e, ambient.mul_int(can_gens[j], t[j]));
            out.push_back(e);
            int i = n - 1;
            while (i >= 0) {
                if (++t[i] < factors[i]) break;
                t[i] = 0;
                --i;
            }
            if (i < 0) break;
        }
        return out;
    }

    bool same_subgroup(const Subgroup& o) const {
        if (!ambient.same_as(o.ambient) || order() != o.order()) return false;
        for (const GroupElt& g : can_gens)
            if (!o.contains(g)) return false;
        return true;
    }
};

inline Subgroup make_subgroup(const AbelianGroup& g, const std::vector<GroupElt>& gens) {
    int n = g.num_factors();
    int k = static_cast<int>(gens.size());
    IntMat stacked(k + n, n);
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(gens[i].size()) != n)
            throw std::invalid_argument("make_subgroup: generator size mismatch");
        for (int j = 0; j < n; ++j) stacked.at(i, j) = mod_nonneg(gens[i][j], g.orders[j]);
    }
    for (int i = 0; i < n; ++i) stacked.at(k + i, i) = g.orders[i];

    SmithResult s = smith_normal_form(stacked);
    Subgroup h;
    h.ambient = g;
    h.snf_v = s.v;
    h.diag_d.resize(n);
    for (int i = 0; i < n; ++i) h.diag_d[i] = s.d.at(i, i);

    IntMat vinv = unimodular_inverse(s.v);
    h.lattice_basis = IntMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.lattice_basis.at(i, j) = h.diag_d[i] * vinv.at(i, j);

    // Relations diag(m) expressed in the lattice basis, then SNF again to
    // obtain H's own invariant factors and canonical generators.
    IntMat rel(n, n);  // rel = diag(m) * basis^{-1} = diag(m) * V * diag(d)^{-1}
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long num = g.orders[i] * s.v.at(i, j);
            if (num % h.diag_d[j] != 0)
                throw std::logic_error("make_subgroup: relation lattice not contained");
            rel.at(i, j) = num / h.diag_d[j];
        }
    SmithResult s2 = smith_normal_form(rel);
    IntMat v2inv = unimodular_inverse(s2.v);
    h.coord_m2 = s2.v;
    h.factors.resize(n);
    h.can_gens.resize(n);
    for (int j = 0; j < n; ++j) {
        h.factors[j] = s2.d.at(j, j);
        GroupElt e(n);
        for (int c = 0; c < n; ++c) {
            long long v = 0;
            for (int i = 0; i < n; ++i) v += v2inv.at(j, i) * h.lattice_basis.at(i, c);
            e[c] = mod_nonneg(v, g.orders[c]);
        }
        h.can_gens[j] = e;
    }
    return h;
}

inline Subgroup trivial_subgroup(const AbelianGroup& g) { return make_subgroup(g, {}); }

inline Subgroup full_subgroup(const AbelianGroup& g) {
    std::vector<GroupElt> gens;
    for (int i = 0; i < g.num_factors(); ++i) {
        GroupElt e = g.identity();
        e[i] = 1;
        gens.push_back(e);
    }
    return make_subgroup(g, gens);
}

inline Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b) {
    std::vector<GroupElt> members;
    for (const GroupElt& x : a.all_elements())
        if (b.contains(x)) members.push_back(x);
    return make_subgroup(a.ambient, members);
}

// Character of a subgroup H, written in H's canonical generator basis:
// chi(can_gen_j) = zeta_{f_j}^{s_j}.
struct SubChar {
    std::vector<long long> exps;  // s_j, 0 <= s_j < f_j (s_j = 0 when f_j = 1)

    bool operator==(const SubChar& o) const { return exps == o.exps; }
    bool operator<(const SubChar& o) const { return exps < o.exps; }
};

inline bool subchar_is_trivial(const SubChar& c) {
    for (long long s : c.exps)
        if (s != 0) return false;
    return true;
}

inline SubChar subchar_mul(const Subgroup& h, const SubChar& a, const SubChar& b) {
    SubChar c;
    c.exps.resize(h.factors.size());
    for (size_t j = 0; j < h.factors.size(); ++j)
        c.exps[j] = h.factors[j] == 0 ? 0 : mod_nonneg(a.exps[j] + b.exps[j], h.factors[j]);
    return c;
}

inline SubChar subchar_inv(const Subgroup& h, const SubChar& a) {
    SubChar c;
    c.exps.resize(h.factors.size());
    for (size_t j = 0; j < h.factors.size(); ++j)
        c.exps[j] = h.factors[j] == 0 ? 0 : mod_nonneg(-a.exps[j], h.factors[j]);
    return c;
}

// Exponent k with chi(x) = zeta_level^k; level must kill exponent(H).
inline long long subchar_eval(const Subgroup& h, const SubChar& chi, const GroupElt& x,
                              long long level) {
    if (level % h.exponent() != 0) throw std::invalid_argument("subchar_eval: bad level");
    std::vector<long long> t = h.coords(x);
    long long k = 0;
    for (size_t j = 0; j < h.factors.size(); ++j) {
        if (h.factors[j] == 1) continue;
        k = mod_nonneg(k + (level / h.factors[j]) * mod_nonneg(chi.exps[j] * t[j], h.factors[j]),
                       level);
    }
    return k;
}

// All |H| characters, lexicographic in exponent tuples; trivial first.
inline std::vector<SubChar> characters_of_subgroup(const Subgroup& h) {
    std::vector<SubChar> out;
    int n = static_cast<int>(h.factors.size());
    SubChar cur;
    cur.exps.assign(n, 0);
    while (true) {
        out.push_back(cur);
        int i = n - 1;
        while (i >= 0) {
            if (++cur.exps[i] < h.factors[i]) break;
            cur.exps[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Restriction of an ambient character to H, in H's canonical basis.
inline SubChar restrict_character(const AbelianGroup& g, const Character& chi,
                                  const Subgroup& h) {
    if (!g.same_as(h.ambient)) throw std::invalid_argument("restrict_character: wrong group");
    long long level = g.exponent();
    SubChar r;
    r.exps.resize(h.factors.size());
    for (size_t j = 0; j < h.factors.size(); ++j) {
        if (h.factors[j] == 1) { r.exps[j] = 0; continue; }
        long long k = pairing_at_level(g, chi.exponents, h.can_gens[j], level);
        long long num = k * h.factors[j];
        if (num % level != 0)
            throw std::logic_error("restrict_character: value not an f_j-th root of unity");
        r.exps[j] = mod_nonneg(num / level, h.factors[j]);
    }
    return r;
}

// Restriction of a subgroup character to a smaller subgroup K <= H.
inline SubChar restrict_subchar(const Subgroup& h, const SubChar& chi, const Subgroup& k) {
    long long level = h.exponent() == 0 ? 1 : h.exponent();
    SubChar r;
    r.exps.resize(k.factors.size());
    for (size_t j = 0; j < k.factors.size(); ++j) {
        if (k.factors[j] == 1) { r.exps[j] = 0; continue; }
        if (!h.contains(k.can_gens[j]))
            throw std::invalid_argument("restrict_subchar: K not inside H");
        long long e = subchar_eval(h, chi, k.can_gens[j], level);
        long long num = e * k.factors[j];
        if (num % level != 0)
            throw std::logic_error("restrict_subchar: value not an f_j-th root of unity");
        r.exps[j] = mod_nonneg(num / level, k.factors[j]);
    }
    return r;
}

inline std::string group_elt_to_string(const GroupElt& g) {
    std::string s = "(";
    for (size_t i = 0; i < g.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(g[i]);
    }
    return s + ")";
}

}  // namespace quiverfold
