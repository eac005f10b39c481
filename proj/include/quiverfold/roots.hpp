#pragma once

#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cartan.hpp"
#include "mckay.hpp"

namespace quiverfold {

// Integer vector over a fixed vertex index set. Arithmetic insists on equal
// sizes, which is how mixing lattices gets caught.
struct LatticeVector {
    std::vector<long long> c;

    LatticeVector() = default;
    explicit LatticeVector(int n) : c(static_cast<size_t>(n), 0) {}
    explicit LatticeVector(std::vector<long long> v) : c(std::move(v)) {}
    LatticeVector(std::initializer_list<long long> v) : c(v) {}

    static LatticeVector basis(int n, int i) {
        LatticeVector e(n);
        e.c[static_cast<size_t>(i)] = 1;
        return e;
    }

    int size() const { return static_cast<int>(c.size()); }
    long long height() const {
        long long s = 0;
        for (long long v : c) s += v;
        return s;
    }
    bool is_zero() const {
        for (long long v : c)
            if (v != 0) return false;
        return true;
    }
    bool is_nonneg() const {
        for (long long v : c)
            if (v < 0) return false;
        return true;
    }
    bool is_nonpos() const {
        for (long long v : c)
            if (v > 0) return false;
        return true;
    }
    bool is_positive() const { return is_nonneg() && !is_zero(); }
    std::vector<int> support() const {
        std::vector<int> s;
        for (int i = 0; i < size(); ++i)
            if (c[i] != 0) s.push_back(i);
        return s;
    }

    friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
        if (a.size() != b.size()) throw std::invalid_argument("lattice vectors of different index sets");
        LatticeVector r = a;
        for (int i = 0; i < b.size(); ++i) r.c[i] += b.c[i];
        return r;
    }
    friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
        if (a.size() != b.size()) throw std::invalid_argument("lattice vectors of different index sets");
        LatticeVector r = a;
        for (int i = 0; i < b.size(); ++i) r.c[i] -= b.c[i];
        return r;
    }
    friend LatticeVector operator-(const LatticeVector& a) {
        LatticeVector r = a;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend LatticeVector operator*(long long k, const LatticeVector& a) {
        LatticeVector r = a;
        for (auto& v : r.c) v *= k;
        return r;
    }
    friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.c == b.c; }
    friend bool operator!=(const LatticeVector& a, const LatticeVector& b) { return a.c != b.c; }
    friend bool operator<(const LatticeVector& a, const LatticeVector& b) { return a.c < b.c; }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        return s + ")";
    }
};

// Symmetric pairing matrix b with positive diagonal d such that c = d^{-1} b
// is the GCM driving reflections. Plain symmetric forms take d = 1; the
// valued-graph form carries the orbit sizes, making reflect() the twisted
// reflection there.
struct BilinearForm {
    IntMat b;
    std::vector<long long> d;
    IntMat c;

    int rank() const { return b.rows; }

    static BilinearForm from_symmetric(const IntMat& a) {
        BilinearForm f;
        f.b = a;
        f.d.assign(a.rows, 1);
        f.c = a;
        for (int i = 0; i < a.rows; ++i)
            for (int j = 0; j < a.cols; ++j)
                if (a.at(i, j) != a.at(j, i))
                    throw std::invalid_argument("from_symmetric: matrix is not symmetric");
        return f;
    }

    static BilinearForm from_valued(const IntMat& b, const std::vector<long long>& d) {
        BilinearForm f;
        f.b = b;
        f.d = d;
        f.c = IntMat(b.rows, b.cols);
        for (int i = 0; i < b.rows; ++i)
            for (int j = 0; j < b.cols; ++j) {
                if (b.at(i, j) != b.at(j, i))
                    throw std::invalid_argument("from_valued: matrix is not symmetric");
                if (d[i] <= 0 || b.at(i, j) % d[i] != 0)
                    throw std::invalid_argument("from_valued: diagonal does not divide its row");
                f.c.at(i, j) = b.at(i, j) / d[i];
            }
        return f;
    }

    static BilinearForm from_gcm(const IntMat& c) {
        BilinearForm f;
        f.c = c;
        f.d = gcm_symmetrizer(c);
        f.b = IntMat(c.rows, c.cols);
        for (int i = 0; i < c.rows; ++i)
            for (int j = 0; j < c.cols; ++j) f.b.at(i, j) = f.d[i] * c.at(i, j);
        for (int i = 0; i < c.rows; ++i)
            for (int j = 0; j < c.cols; ++j)
                if (f.b.at(i, j) != f.b.at(j, i))
                    throw std::invalid_argument("from_gcm: symmetrization failed");
        return f;
    }

    long long pair(const LatticeVector& v, const LatticeVector& w) const {
        if (v.size() != rank() || w.size() != rank())
            throw std::invalid_argument("pair: vector on wrong lattice");
        long long s = 0;
        for (int i = 0; i < rank(); ++i) {
            if (v.c[i] == 0) continue;
            for (int j = 0; j < rank(); ++j) s += v.c[i] * b.at(i, j) * w.c[j];
        }
        return s;
    }

    // r_i(v) = v - <v, coroot_i> e_i with <v, coroot_i> = sum_j c_ij v_j;
    // on the valued form this is the twisted reflection.
    LatticeVector reflect(int i, const LatticeVector& v) const {
        if (v.size() != rank()) throw std::invalid_argument("reflect: vector on wrong lattice");
        if (i < 0 || i >= rank()) throw std::invalid_argument("reflect: index out of range");
        long long k = 0;
        for (int j = 0; j < rank(); ++j) k += c.at(i, j) * v.c[j];
        LatticeVector out = v;
        out.c[static_cast<size_t>(i)] -= k;
        return out;
    }

    // words replay left to right: first entry is applied first
    LatticeVector apply_word(const std::vector<int>& word, LatticeVector v) const {
        for (int i : word) v = reflect(i, v);
        return v;
    }
};

struct RealRoot {
    LatticeVector root;
    int simple;              // index of the seed simple root
    std::vector<int> word;   // apply_word(word, e_simple) == root
};

struct ImaginaryRoot {
    LatticeVector root;
    LatticeVector seed;      // ancestor in the fundamental region
    std::vector<int> word;   // apply_word(word, seed) == root
};

struct RootSystemView {
    BilinearForm form;
    long long height_bound = 0;
    bool finite_type = false;
    std::vector<RealRoot> real_pos;
    std::vector<ImaginaryRoot> imag_pos;
    std::set<std::vector<long long>> real_set;
    std::set<std::vector<long long>> imag_set;

    size_t num_positive() const { return real_pos.size() + imag_pos.size(); }
    bool is_positive_root(const LatticeVector& v) const {
        return real_set.count(v.c) || imag_set.count(v.c);
    }
    bool is_root(const LatticeVector& v) const { return is_positive_root(v) || is_positive_root(-v); }
};

namespace detail {

inline bool support_connected(const IntMat& c, const LatticeVector& v) {
    std::vector<int> supp = v.support();
    if (supp.empty()) return false;
    std::set<int> in(supp.begin(), supp.end());
    std::vector<int> stack{supp[0]};
    std::set<int> seen{supp[0]};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j : supp)
            if (!seen.count(j) && c.at(i, j) != 0) {
                seen.insert(j);
                stack.push_back(j);
            }
    }
    return seen.size() == in.size();
}

// all v >= 0 with height between 1 and hmax, emitted in lexicographic order
template <typename Fn>
void scan_nonneg_box(int n, long long hmax, Fn&& fn) {
    LatticeVector v(n);
    std::function<void(int, long long)> rec = [&](int pos, long long left) {
        if (pos == n) {
            if (!v.is_zero()) fn(v);
            return;
        }
        for (long long t = 0; t <= left; ++t) {
            v.c[static_cast<size_t>(pos)] = t;
            rec(pos + 1, left - t);
        }
        v.c[static_cast<size_t>(pos)] = 0;
    };
    rec(0, hmax);
}

}  // namespace detail

// Positive roots of a symmetrizable GCM up to the height bound, with Weyl
// witnesses. Finite-type matrices (detected by classification) are always
// enumerated completely, whatever the bound. Non-finite enumeration adds the
// imaginary roots: the fundamental region inside the height box (positive,
// connected support, (v, e_i) <= 0 for all i) and its Weyl orbit.
inline RootSystemView enumerate_roots(const BilinearForm& form, long long height_bound = -1) {
    int n = form.rank();
    RootSystemView out;
    out.form = form;
    out.finite_type = classify(form.c).all_finite();
    if (height_bound < 1) height_bound = std::max<long long>(10, 2LL * n * (n + 1));
    long long cap = out.finite_type ? (LLONG_MAX / 4) : height_bound;
    const size_t budget = size_t{1} << 21;

    std::set<std::vector<long long>> seen;
    std::deque<RealRoot> pool;
    for (int i = 0; i < n; ++i) {
        RealRoot r{LatticeVector::basis(n, i), i, {}};
        seen.insert(r.root.c);
        pool.push_back(std::move(r));
    }
    for (size_t head = 0; head < pool.size(); ++head) {
        RealRoot cur = pool[head];
        for (int i = 0; i < n; ++i) {
            LatticeVector img = form.reflect(i, cur.root);
            if (img == cur.root) continue;
            if (!img.is_nonneg()) {
                if (!img.is_nonpos())
                    throw std::logic_error("enumerate_roots: reflection produced a mixed-sign vector");
                continue;
            }
            if (img.height() > cap || seen.count(img.c)) continue;
            seen.insert(img.c);
            RealRoot nxt{img, cur.simple, cur.word};
            nxt.word.push_back(i);
            pool.push_back(std::move(nxt));
            if (pool.size() > budget)
                throw std::runtime_error("enumerate_roots: real root budget exceeded");
        }
    }
    out.real_pos.assign(pool.begin(), pool.end());
    std::sort(out.real_pos.begin(), out.real_pos.end(), [](const RealRoot& a, const RealRoot& b) {
        long long ha = a.root.height(), hb = b.root.height();
        if (ha != hb) return ha < hb;
        return a.root.c < b.root.c;
    });
    long long tallest = 0;
    for (const RealRoot& r : out.real_pos) {
        out.real_set.insert(r.root.c);
        tallest = std::max(tallest, r.root.height());
    }
    out.height_bound = out.finite_type ? std::max(height_bound, tallest) : height_bound;

    if (!out.finite_type) {
        // fundamental region seeds in (height, lex) order
        double box = 1;
        for (int t = 1; t <= n; ++t) box *= static_cast<double>(height_bound + t) / t;
        if (box > 8e6) throw std::runtime_error("enumerate_roots: imaginary box budget exceeded");
        std::vector<LatticeVector> seeds;
        detail::scan_nonneg_box(n, height_bound, [&](const LatticeVector& v) {
            for (int i = 0; i < n; ++i) {
                long long p = 0;
                for (int j = 0; j < n; ++j) p += form.b.at(i, j) * v.c[j];
                if (p > 0) return;
            }
            if (!detail::support_connected(form.c, v)) return;
            seeds.push_back(v);
        });
        std::sort(seeds.begin(), seeds.end(), [](const LatticeVector& a, const LatticeVector& b) {
            long long ha = a.height(), hb = b.height();
            if (ha != hb) return ha < hb;
            return a.c < b.c;
        });

        std::set<std::vector<long long>> iseen;
        std::deque<ImaginaryRoot> ipool;
        for (const LatticeVector& s : seeds)
            if (!iseen.count(s.c)) {
                iseen.insert(s.c);
                ipool.push_back({s, s, {}});
            }
        for (size_t head = 0; head < ipool.size(); ++head) {
            ImaginaryRoot cur = ipool[head];
            for (int i = 0; i < n; ++i) {
                LatticeVector img = form.reflect(i, cur.root);
                if (img == cur.root) continue;
                if (!img.is_nonneg())
                    throw std::logic_error("enumerate_roots: imaginary image left the positive cone");
                if (img.height() > height_bound || iseen.count(img.c)) continue;
                iseen.insert(img.c);
                ImaginaryRoot nxt{img, cur.seed, cur.word};
                nxt.word.push_back(i);
                ipool.push_back(std::move(nxt));
                if (ipool.size() > budget)
                    throw std::runtime_error("enumerate_roots: imaginary root budget exceeded");
            }
        }
        out.imag_pos.assign(ipool.begin(), ipool.end());
        std::sort(out.imag_pos.begin(), out.imag_pos.end(),
                  [](const ImaginaryRoot& a, const ImaginaryRoot& b) {
                      long long ha = a.root.height(), hb = b.root.height();
                      if (ha != hb) return ha < hb;
                      return a.root.c < b.root.c;
                  });
        for (const ImaginaryRoot& r : out.imag_pos) out.imag_set.insert(r.root.c);
    }
    return out;
}

inline RootSystemView enumerate_roots(const IntMat& gcm, long long height_bound = -1) {
    return enumerate_roots(BilinearForm::from_gcm(gcm), height_bound);
}

// The three lattices of one folding datum with the maps between them:
// f identifies fixed vectors of ZI with the fold lattice, Sigma is the orbit
// sum, pi = f after Sigma, h sums fibers of the constructed quiver, and the
// composite reflections act over one orbit resp. one fiber at a time.
struct FoldingMaps {
    Quiver q;
    MonomialAction act;
    McKayQuiver mk;
    ValuedGraphData gamma;
    BilinearForm form_q;
    BilinearForm form_gamma;
    BilinearForm form_qhat;

    const OrbitData& orbits() const { return mk.base_orbits; }
    int rank_q() const { return q.num_vertices(); }
    int rank_gamma() const { return gamma.rank(); }
    int rank_qhat() const { return mk.quiver.num_vertices(); }

    LatticeVector act_on_q(const GroupElt& g, const LatticeVector& a) const {
        if (a.size() != rank_q()) throw std::invalid_argument("act_on_q: vector on wrong lattice");
        GroupElt gi = act.group.neg(g);
        LatticeVector out(rank_q());
        for (int v = 0; v < rank_q(); ++v)
            out.c[v] = a.c[static_cast<size_t>(act_vertex(act, gi, v))];
        return out;
    }

    LatticeVector act_on_qhat(const GroupElt& g, const LatticeVector& b) const {
        if (b.size() != rank_qhat()) throw std::invalid_argument("act_on_qhat: vector on wrong lattice");
        GroupElt gi = act.group.neg(g);
        LatticeVector out(rank_qhat());
        for (int v = 0; v < rank_qhat(); ++v)
            out.c[v] = b.c[static_cast<size_t>(act_vertex(mk.induced, gi, v))];
        return out;
    }

    bool g_fixed(const LatticeVector& a) const {
        const OrbitData& od = orbits();
        for (size_t o = 0; o < od.reps.size(); ++o)
            for (int v : od.vertex_orbits[o])
                if (a.c[static_cast<size_t>(v)] != a.c[static_cast<size_t>(od.reps[o])]) return false;
        return true;
    }

    LatticeVector f(const LatticeVector& a) const {
        if (a.size() != rank_q()) throw std::invalid_argument("f: vector on wrong lattice");
        if (!g_fixed(a)) throw std::invalid_argument("f: vector is not fixed by the action");
        LatticeVector out(rank_gamma());
        for (int o = 0; o < rank_gamma(); ++o) out.c[o] = a.c[static_cast<size_t>(orbits().reps[o])];
        return out;
    }

    LatticeVector f_inv(const LatticeVector& x) const {
        if (x.size() != rank_gamma()) throw std::invalid_argument("f_inv: vector on wrong lattice");
        LatticeVector out(rank_q());
        for (int v = 0; v < rank_q(); ++v) out.c[v] = x.c[static_cast<size_t>(orbits().orbit_of_vertex[v])];
        return out;
    }

    Subgroup stabilizer_of(const LatticeVector& a) const {
        std::vector<GroupElt> fixing;
        for (const GroupElt& g : act.group.all_elements())
            if (act_on_q(g, a) == a) fixing.push_back(g);
        return make_subgroup(act.group, fixing);
    }

    // Sigma(a): sum of g.a over coset representatives of the stabilizer
    LatticeVector orbit_sum(const LatticeVector& a) const {
        Subgroup st = stabilizer_of(a);
        LatticeVector out(rank_q());
        std::vector<GroupElt> reps;
        for (const GroupElt& g : act.group.all_elements()) {
            bool fresh = true;
            for (const GroupElt& r : reps)
                if (st.contains(act.group.add(g, act.group.neg(r)))) {
                    fresh = false;
                    break;
                }
            if (!fresh) continue;
            reps.push_back(g);
            out = out + act_on_q(g, a);
        }
        return out;
    }

    LatticeVector pi(const LatticeVector& a) const { return f(orbit_sum(a)); }

    LatticeVector h(const LatticeVector& b) const {
        if (b.size() != rank_qhat()) throw std::invalid_argument("h: vector on wrong lattice");
        LatticeVector out(rank_gamma());
        for (int w = 0; w < rank_qhat(); ++w)
            out.c[static_cast<size_t>(orbits().orbit_of_vertex[mk.vertices[w].base])] += b.c[w];
        return out;
    }

    // product of the simple reflections over one vertex orbit of Q
    LatticeVector composite_reflection(int o, const LatticeVector& a) const {
        LatticeVector out = a;
        for (int v : orbits().vertex_orbits[o]) out = form_q.reflect(v, out);
        return out;
    }

    // product of the simple reflections over one fiber of the new quiver
    LatticeVector composite_reflection_hat(int o, const LatticeVector& b) const {
        LatticeVector out = b;
        for (int w = 0; w < rank_qhat(); ++w)
            if (mk.vertices[w].base == orbits().reps[o]) out = form_qhat.reflect(w, out);
        return out;
    }
};

inline FoldingMaps make_fold_maps(const Quiver& q, const MonomialAction& act) {
    FoldingMaps fm;
    fm.q = q;
    fm.act = act;
    fm.mk = build_mckay(q, act);
    fm.gamma = fold_cartan(q, fm.mk.base_orbits);
    fm.form_q = BilinearForm::from_symmetric(cartan_of_quiver(q));
    fm.form_gamma = BilinearForm::from_valued(fm.gamma.b, fm.gamma.d);
    fm.form_qhat = BilinearForm::from_symmetric(cartan_of_quiver(fm.mk.quiver));
    return fm;
}

namespace detail {

template <typename Fn>
void scan_signed_box(int n, long long radius, Fn&& fn) {
    LatticeVector v(n);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
            fn(v);
            return;
        }
        for (long long t = -radius; t <= radius; ++t) {
            v.c[static_cast<size_t>(pos)] = t;
            rec(pos + 1);
        }
        v.c[static_cast<size_t>(pos)] = 0;
    };
    rec(0);
}

inline long long clamp_radius(int n, long long radius, double cap) {
    while (radius > 0) {
        double total = 1;
        for (int t = 0; t < n; ++t) total *= static_cast<double>(2 * radius + 1);
        if (total <= cap) return radius;
        --radius;
    }
    return 0;
}

}  // namespace detail

// Identity checks tying the three lattices together, on exhaustive boxes and
// random samples:
//   form-under-f        (a,b)_Q = (f a, f b)_Gamma for fixed vectors
//   reflection-under-f  f(S_o a) = gamma_o(f a) for fixed vectors
//   form-bridge         (h b, e_o)_Gamma = d_o sum_fiber (b, e_w)_Qhat
//   reflection-under-h  h(Shat_o b) = gamma_o(h b)
inline ValidationReport verify_folding_identities(const FoldingMaps& fm, long long gamma_radius,
                                                  long long hat_radius, int samples,
                                                  unsigned long long seed) {
    ValidationReport rep;
    int ng = fm.rank_gamma(), nh = fm.rank_qhat();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> coeff(-5, 5);

    gamma_radius = detail::clamp_radius(ng, gamma_radius, 2000);
    std::vector<LatticeVector> gbox;
    detail::scan_signed_box(ng, gamma_radius, [&](const LatticeVector& v) { gbox.push_back(v); });
    for (int t = 0; t < samples; ++t) {
        LatticeVector v(ng);
        for (auto& x : v.c) x = coeff(rng);
        gbox.push_back(v);
    }

    {
        CheckResult c{"form-under-f", true, ""};
        for (const LatticeVector& x : gbox) {
            LatticeVector a = fm.f_inv(x);
            for (const LatticeVector& y : gbox) {
                if (fm.form_q.pair(a, fm.f_inv(y)) != fm.form_gamma.pair(x, y)) {
                    c.ok = false;
                    c.witness = "x=" + x.str() + " y=" + y.str();
                    break;
                }
            }
            if (!c.ok) break;
        }
        if (c.ok) c.witness = "checked " + std::to_string(gbox.size() * gbox.size()) + " pairs";
        rep.checks.push_back(c);
    }
    {
        CheckResult c{"reflection-under-f", true, ""};
        for (const LatticeVector& x : gbox) {
            for (int o = 0; o < ng && c.ok; ++o)
                if (fm.f(fm.composite_reflection(o, fm.f_inv(x))) != fm.form_gamma.reflect(o, x)) {
                    c.ok = false;
                    c.witness = "x=" + x.str() + " orbit=" + std::to_string(o);
                }
            if (!c.ok) break;
        }
        if (c.ok) c.witness = "checked " + std::to_string(gbox.size()) + " vectors";
        rep.checks.push_back(c);
    }

    hat_radius = detail::clamp_radius(nh, hat_radius, 8e6);
    std::vector<std::vector<int>> fiber(ng);
    for (int w = 0; w < nh; ++w)
        fiber[fm.orbits().orbit_of_vertex[fm.mk.vertices[w].base]].push_back(w);

    size_t hat_count = 0;
    bool bridge_ok = true, hat_refl_ok = true;
    std::string bridge_witness, hat_refl_witness;
    auto check_hat = [&](const LatticeVector& v) {
        ++hat_count;
        LatticeVector hv = fm.h(v);
        for (int o = 0; o < ng; ++o) {
            if (bridge_ok) {
                long long lhs = fm.form_gamma.pair(hv, LatticeVector::basis(ng, o));
                long long rhs = 0;
                for (int w : fiber[o]) rhs += fm.form_qhat.pair(v, LatticeVector::basis(nh, w));
                rhs *= fm.gamma.d[o];
                if (lhs != rhs) {
                    bridge_ok = false;
                    bridge_witness = "v=" + v.str() + " index=" + std::to_string(o);
                }
            }
            if (hat_refl_ok &&
                fm.h(fm.composite_reflection_hat(o, v)) != fm.form_gamma.reflect(o, hv)) {
                hat_refl_ok = false;
                hat_refl_witness = "v=" + v.str() + " index=" + std::to_string(o);
            }
        }
    };
    // basis vectors settle the linear identities; boxes and samples corroborate
    for (int w = 0; w < nh; ++w) check_hat(LatticeVector::basis(nh, w));
    detail::scan_signed_box(nh, hat_radius, check_hat);
    for (int t = 0; t < samples; ++t) {
        LatticeVector v(nh);
        for (auto& x : v.c) x = coeff(rng);
        check_hat(v);
    }
    rep.checks.push_back({"form-bridge", bridge_ok,
                          bridge_ok ? "checked " + std::to_string(hat_count) + " vectors"
                                    : bridge_witness});
    rep.checks.push_back({"reflection-under-h", hat_refl_ok,
                          hat_refl_ok ? "checked " + std::to_string(hat_count) + " vectors"
                                      : hat_refl_witness});
    return rep;
}

// Folding theorem verification at the root-system level. Everything is
// checked up to the common height bound; h preserves heights, so fibers of
// the enumerated roots are complete even when the systems are infinite.
struct FoldTheoremRow {
    LatticeVector root;       // positive root of the fold
    bool real = false;
    long long fiber_size = 0;     // roots of the new quiver mapping onto it under h
    bool single_orbit = false;    // that fiber is one orbit of the induced action
    bool fiber_real = false;      // every fiber member is real
    long long norm_half = 0;      // (f^{-1} root, f^{-1} root)_Q / 2
    long long pi_orbit = 0;       // |G| / |stabilizer| for its preimages in Q (0 if none found)
};

struct FoldTheoremReport {
    long long height_bound = 0;
    bool complete = false;            // all three root systems fully enumerated
    bool image_in_roots = true;       // h maps new-quiver roots into fold roots
    bool surjective = true;           // every fold root has a nonempty fiber
    bool fibers_real_single_orbit = true;
    bool norm_counts = true;          // norm_half = pi_orbit on real roots
    bool pi_onto = true;              // pi covers the fold roots with single-orbit real fibers
    std::vector<FoldTheoremRow> rows;
    std::string failures;

    bool ok() const {
        return image_in_roots && surjective && fibers_real_single_orbit && norm_counts && pi_onto;
    }
    std::string str() const {
        std::ostringstream os;
        os << (complete ? "complete enumeration" : "verified up to height " + std::to_string(height_bound))
           << "\n";
        os << "image contained: " << (image_in_roots ? "yes" : "NO") << "\n";
        os << "surjective: " << (surjective ? "yes" : "NO") << "\n";
        os << "real fibers single orbits: " << (fibers_real_single_orbit ? "yes" : "NO") << "\n";
        os << "norm counts: " << (norm_counts ? "yes" : "NO") << "\n";
        os << "preimage cover: " << (pi_onto ? "yes" : "NO") << "\n";
        for (const FoldTheoremRow& r : rows)
            os << "  " << r.root.str() << (r.real ? " real" : " imaginary") << " fiber " << r.fiber_size
               << (r.real ? (r.single_orbit ? " (one orbit)" : " (NOT one orbit)") : "")
               << " norm/2 " << r.norm_half << " preimage orbit " << r.pi_orbit << "\n";
        if (!failures.empty()) os << failures;
        return os.str();
    }
};

inline FoldTheoremReport verify_fold_theorem(const FoldingMaps& fm, long long height_bound = -1) {
    FoldTheoremReport rep;
    int nh = fm.rank_qhat();
    if (height_bound < 1) height_bound = std::max<long long>(10, 2LL * nh * (nh + 1));

    RootSystemView gamma_roots = enumerate_roots(fm.form_gamma, height_bound);
    RootSystemView qhat_roots = enumerate_roots(fm.form_qhat, height_bound);
    RootSystemView q_roots = enumerate_roots(fm.form_q, height_bound);
    rep.complete = gamma_roots.finite_type && qhat_roots.finite_type;
    rep.height_bound = std::max({gamma_roots.height_bound, qhat_roots.height_bound});

    auto note = [&](const std::string& s) { rep.failures += s + "\n"; };

    // fibers of h over the fold roots
    std::map<std::vector<long long>, std::vector<LatticeVector>> hfiber;
    auto add_beta = [&](const LatticeVector& beta) {
        LatticeVector img = fm.h(beta);
        if (!gamma_roots.is_positive_root(img)) {
            rep.image_in_roots = false;
            note("h(" + beta.str() + ") = " + img.str() + " is not a positive root of the fold");
        }
        hfiber[img.c].push_back(beta);
    };
    for (const RealRoot& r : qhat_roots.real_pos) add_beta(r.root);
    for (const ImaginaryRoot& r : qhat_roots.imag_pos) add_beta(r.root);

    // preimages under pi
    std::map<std::vector<long long>, std::vector<LatticeVector>> pifiber;
    for (const RealRoot& r : q_roots.real_pos) {
        LatticeVector img = fm.pi(r.root);
        if (img.height() <= gamma_roots.height_bound && !gamma_roots.is_positive_root(img)) {
            rep.pi_onto = false;
            note("pi(" + r.root.str() + ") = " + img.str() + " is not a positive root of the fold");
        }
        pifiber[img.c].push_back(r.root);
    }

    auto group_elements = fm.act.group.all_elements();
    auto emit_row = [&](const LatticeVector& alpha, bool real) {
        FoldTheoremRow row;
        row.root = alpha;
        row.real = real;
        auto it = hfiber.find(alpha.c);
        std::vector<LatticeVector> fiber = it == hfiber.end() ? std::vector<LatticeVector>{} : it->second;
        row.fiber_size = static_cast<long long>(fiber.size());
        if (fiber.empty()) {
            rep.surjective = false;
            note("no root of the new quiver maps onto " + alpha.str());
        }
        if (real && !fiber.empty()) {
            row.fiber_real = true;
            for (const LatticeVector& beta : fiber)
                if (!qhat_roots.real_set.count(beta.c)) row.fiber_real = false;
            std::set<std::vector<long long>> orbit;
            for (const GroupElt& g : group_elements) orbit.insert(fm.act_on_qhat(g, fiber[0]).c);
            std::set<std::vector<long long>> got;
            for (const LatticeVector& beta : fiber) got.insert(beta.c);
            row.single_orbit = orbit == got;
            if (!row.fiber_real || !row.single_orbit) {
                rep.fibers_real_single_orbit = false;
                note("fiber over " + alpha.str() + " is not a single orbit of real roots");
            }
        }
        LatticeVector lift = fm.f_inv(alpha);
        long long norm = fm.form_q.pair(lift, lift);
        row.norm_half = norm / 2;
        auto pit = pifiber.find(alpha.c);
        if (pit != pifiber.end() && !pit->second.empty()) {
            row.pi_orbit = fm.act.group.order() / fm.stabilizer_of(pit->second[0]).order();
            if (real) {
                std::set<long long> sizes;
                for (const LatticeVector& u : pit->second)
                    sizes.insert(fm.act.group.order() / fm.stabilizer_of(u).order());
                if (sizes.size() != 1) {
                    rep.pi_onto = false;
                    note("preimages of " + alpha.str() + " have different orbit sizes");
                }
                if (row.norm_half != row.pi_orbit) {
                    rep.norm_counts = false;
                    note("norm count mismatch at " + alpha.str() + ": " + std::to_string(row.norm_half) +
                         " vs " + std::to_string(row.pi_orbit));
                }
                std::set<std::vector<long long>> orbit;
                for (const GroupElt& g : group_elements)
                    orbit.insert(fm.act_on_q(g, pit->second[0]).c);
                std::set<std::vector<long long>> got;
                for (const LatticeVector& u : pit->second) got.insert(u.c);
                if (orbit != got) {
                    rep.pi_onto = false;
                    note("preimages of " + alpha.str() + " form more than one orbit");
                }
            }
        } else if (rep.complete && q_roots.finite_type) {
            rep.pi_onto = false;
            note("no root of the base quiver maps onto " + alpha.str());
        }
        rep.rows.push_back(std::move(row));
    };

    std::vector<std::pair<LatticeVector, bool>> all;
    for (const RealRoot& r : gamma_roots.real_pos) all.push_back({r.root, true});
    for (const ImaginaryRoot& r : gamma_roots.imag_pos) all.push_back({r.root, false});
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        long long ha = a.first.height(), hb = b.first.height();
        if (ha != hb) return ha < hb;
        return a.first.c < b.first.c;
    });
    for (const auto& [alpha, real] : all) emit_row(alpha, real);
    return rep;
}

}  // namespace quiverfold
