#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"
#include "roots.hpp"

namespace quiverfold {

// Minimal realization of a symmetrizable GCM: a space of dimension 2n - l
// carrying independent coroots (unit coordinates) and independent functionals
// eps_j with eps_j(H_i) = c_ij. The completion places unit coordinates at a
// deterministic set of dependent columns.
struct Realization {
    IntMat gcm;
    int n = 0;
    int l = 0;
    int dim_h = 0;
    Mat<Rational> eps;     // one row per functional, dim_h columns
    Mat<Rational> center;  // rows spanning the common kernel of the functionals

    Rational eval(int j, const std::vector<Rational>& h) const {
        if (static_cast<int>(h.size()) != dim_h) throw std::invalid_argument("eval: wrong dimension");
        Rational s(0);
        for (int t = 0; t < dim_h; ++t) s += eps.at(j, t) * h[t];
        return s;
    }
};

inline Realization minimal_realization(const IntMat& c) {
    int n = c.rows;
    if (n == 0 || c.cols != n) throw std::invalid_argument("minimal_realization: square matrix required");
    for (int i = 0; i < n; ++i) {
        if (c.at(i, i) != 2) throw std::invalid_argument("minimal_realization: diagonal must be 2");
        for (int j = 0; j < n; ++j)
            if (i != j && c.at(i, j) > 0)
                throw std::invalid_argument("minimal_realization: positive off-diagonal entry");
    }
    gcm_symmetrizer(c);  // validates the zero pattern and symmetrizability
    Realization re;
    re.gcm = c;
    re.n = n;

    // greedy independent set over the functional rows (columns of c)
    Mat<Rational> rows(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) rows.at(j, i) = rat(c.at(i, j));
    std::vector<int> dependent;
    Mat<Rational> kept(0, n);
    for (int j = 0; j < n; ++j) {
        Mat<Rational> trial(kept.rows + 1, n);
        for (int r = 0; r < kept.rows; ++r)
            for (int t = 0; t < n; ++t) trial.at(r, t) = kept.at(r, t);
        for (int t = 0; t < n; ++t) trial.at(kept.rows, t) = rows.at(j, t);
        if (rank(trial) > kept.rows)
            kept = trial;
        else
            dependent.push_back(j);
    }
    re.l = n - static_cast<int>(dependent.size());
    re.dim_h = 2 * n - re.l;

    re.eps = Mat<Rational>(n, re.dim_h);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) re.eps.at(j, i) = rat(c.at(i, j));
    for (size_t t = 0; t < dependent.size(); ++t)
        re.eps.at(dependent[t], n + static_cast<int>(t)) = Rational(1);
    if (rank(re.eps) != n) throw std::logic_error("minimal_realization: completion failed");
    re.center = nullspace(re.eps);
    return re;
}

// Finite-dimensional Lie algebra of a symmetric finite-type GCM. Basis:
// Cartan coordinates h_0..h_{n-1}, then one x_alpha per root (positives in
// (height, lex) order, then the matching negatives). Structure constants
// come from a bimultiplicative sign on the root lattice with
// sign(e_i, e_i) = -1, fixed on ordered simple pairs by an orientation.
struct FiniteLieAlgebra {
    IntMat gcm;
    int n = 0;
    int dim = 0;
    std::vector<LatticeVector> roots;  // positives then negatives
    std::map<std::vector<long long>, int> root_pos;  // root -> basis index
    std::vector<std::vector<int>> sign_exp;          // orientation exponents, 0/1
    std::vector<std::vector<std::vector<std::pair<int, Rational>>>> table;

    int root_index(const LatticeVector& a) const {
        auto it = root_pos.find(a.c);
        if (it == root_pos.end()) throw std::invalid_argument("root_index: not a root");
        return it->second;
    }

    int sign(const LatticeVector& a, const LatticeVector& b) const {
        long long s = 0;
        for (int i = 0; i < n; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; j < n; ++j)
                if (sign_exp[i][j]) s += a.c[i] * b.c[j];
        }
        return (s % 2 + 2) % 2 == 0 ? 1 : -1;
    }

    std::vector<Rational> zero() const { return std::vector<Rational>(dim, Rational(0)); }
    std::vector<Rational> basis_vec(int u) const {
        auto v = zero();
        v[static_cast<size_t>(u)] = Rational(1);
        return v;
    }
    std::vector<Rational> chevalley_h(int i) const { return basis_vec(i); }
    std::vector<Rational> chevalley_e(int i) const {
        return basis_vec(root_index(LatticeVector::basis(n, i)));
    }
    std::vector<Rational> chevalley_f(int i) const {
        // the minus sign turns [x_a, x_-a] = -t_a into [E_i, F_i] = H_i
        auto v = zero();
        v[static_cast<size_t>(root_index(-LatticeVector::basis(n, i)))] = Rational(-1);
        return v;
    }

    std::vector<Rational> bracket(const std::vector<Rational>& x,
                                  const std::vector<Rational>& y) const {
        if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim)
            throw std::invalid_argument("bracket: wrong dimension");
        auto out = zero();
        for (int u = 0; u < dim; ++u) {
            if (is_zero(x[u])) continue;
            for (int v = 0; v < dim; ++v) {
                if (is_zero(y[v])) continue;
                for (const auto& [idx, coef] : table[u][v]) out[idx] += x[u] * y[v] * coef;
            }
        }
        return out;
    }
};

namespace detail {

inline FiniteLieAlgebra build_lie(const IntMat& a, std::vector<std::vector<int>> sign_exp) {
    int n = a.rows;
    for (int i = 0; i < n; ++i) {
        if (a.at(i, i) != 2) throw std::invalid_argument("build_finite_lie_algebra: diagonal must be 2");
        for (int j = 0; j < n; ++j) {
            if (a.at(i, j) != a.at(j, i))
                throw std::invalid_argument("build_finite_lie_algebra: matrix must be symmetric");
            if (i != j && a.at(i, j) > 0)
                throw std::invalid_argument("build_finite_lie_algebra: positive off-diagonal entry");
        }
    }
    if (!classify(a).all_finite())
        throw std::invalid_argument("build_finite_lie_algebra: finite type required");

    FiniteLieAlgebra L;
    L.gcm = a;
    L.n = n;
    L.sign_exp = std::move(sign_exp);
    for (int i = 0; i < n; ++i) {
        if (L.sign_exp[i][i] % 2 != 1) throw std::logic_error("orientation: diagonal exponent must be odd");
        for (int j = 0; j < n; ++j) {
            L.sign_exp[i][j] = ((L.sign_exp[i][j] % 2) + 2) % 2;
            if (i != j && ((L.sign_exp[i][j] + L.sign_exp[j][i]) - (-a.at(i, j))) % 2 != 0)
                throw std::logic_error("orientation: exponents disagree with the pairing");
        }
    }

    RootSystemView rs = enumerate_roots(BilinearForm::from_symmetric(a));
    int p = static_cast<int>(rs.real_pos.size());
    L.dim = n + 2 * p;
    for (int t = 0; t < p; ++t) {
        L.roots.push_back(rs.real_pos[t].root);
        L.root_pos[rs.real_pos[t].root.c] = n + t;
    }
    for (int t = 0; t < p; ++t) {
        L.roots.push_back(-rs.real_pos[t].root);
        L.root_pos[(-rs.real_pos[t].root).c] = n + p + t;
    }

    L.table.assign(L.dim, std::vector<std::vector<std::pair<int, Rational>>>(L.dim));
    auto pairing = [&](int i, const LatticeVector& b) {
        long long s = 0;
        for (int j = 0; j < n; ++j) s += a.at(i, j) * b.c[j];
        return s;
    };
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < 2 * p; ++t) {
            long long k = pairing(i, L.roots[t]);
            if (k != 0) {
                L.table[i][n + t].push_back({n + t, rat(k)});
                L.table[n + t][i].push_back({n + t, rat(-k)});
            }
        }
    for (int s = 0; s < 2 * p; ++s)
        for (int t = 0; t < 2 * p; ++t) {
            const LatticeVector& alpha = L.roots[s];
            const LatticeVector& beta = L.roots[t];
            LatticeVector sum = alpha + beta;
            if (sum.is_zero()) {
                // [x_a, x_-a] = -t_a; the constant is forced by the Jacobi
                // identity on triples (x_a, x_-a, x_b) with a + b a root
                for (int i = 0; i < n; ++i)
                    if (alpha.c[i] != 0)
                        L.table[n + s][n + t].push_back({i, rat(-alpha.c[i])});
            } else {
                auto it = L.root_pos.find(sum.c);
                if (it != L.root_pos.end())
                    L.table[n + s][n + t].push_back({it->second, Rational(L.sign(alpha, beta))});
            }
        }
    return L;
}

}  // namespace detail

// canonical orientation: every bond oriented from the smaller index
inline FiniteLieAlgebra build_finite_lie_algebra(const IntMat& a) {
    int n = a.rows;
    std::vector<std::vector<int>> ex(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        ex[i][i] = 1;
        for (int j = i + 1; j < n; ++j) ex[i][j] = static_cast<int>(((-a.at(i, j)) % 2 + 2) % 2);
    }
    return detail::build_lie(a, std::move(ex));
}

// orientation read off an actual quiver
inline FiniteLieAlgebra build_finite_lie_algebra(const Quiver& q) {
    IntMat a = cartan_of_quiver(q);
    int n = q.num_vertices();
    std::vector<std::vector<int>> ex(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) ex[i][i] = 1;
    for (const Arrow& ar : q.arrows) ex[ar.src][ar.tgt] = (ex[ar.src][ar.tgt] + 1) % 2;
    return detail::build_lie(a, std::move(ex));
}

// Automorphism extending a vertex permutation: h_i -> h_{gi},
// x_alpha -> eta(alpha) x_{g alpha} with eta = +1 on simple roots and the
// remaining signs forced by bracket compatibility, propagated by height.
struct LiftedAutomorphism {
    std::vector<int> perm;
    std::map<std::vector<long long>, int> eta;  // on positive roots
    Mat<Rational> matrix;
    int order = 0;

    std::vector<Rational> apply(const std::vector<Rational>& x) const { return matrix.apply(x); }
};

inline LiftedAutomorphism lift_automorphism(const FiniteLieAlgebra& L, const std::vector<int>& perm) {
    int n = L.n;
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("lift_automorphism: permutation size mismatch");
    std::vector<bool> hit(n, false);
    for (int v : perm) {
        if (v < 0 || v >= n || hit[v]) throw std::invalid_argument("lift_automorphism: not a permutation");
        hit[v] = true;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (L.gcm.at(perm[i], perm[j]) != L.gcm.at(i, j))
                throw std::invalid_argument("lift_automorphism: permutation does not preserve the matrix");

    auto permute = [&](const LatticeVector& a) {
        LatticeVector out(n);
        for (int i = 0; i < n; ++i) out.c[static_cast<size_t>(perm[i])] = a.c[i];
        return out;
    };

    LiftedAutomorphism au;
    au.perm = perm;
    int p = (L.dim - n) / 2;
    for (int t = 0; t < p; ++t) {
        const LatticeVector& alpha = L.roots[t];
        if (alpha.height() == 1) {
            au.eta[alpha.c] = 1;
            continue;
        }
        int k = -1;
        LatticeVector beta(n);
        for (int i = 0; i < n; ++i) {
            LatticeVector cand = alpha - LatticeVector::basis(n, i);
            if (cand.is_positive() && L.root_pos.count(cand.c)) {
                k = i;
                beta = cand;
                break;
            }
        }
        if (k < 0) throw std::logic_error("lift_automorphism: no simple summand found");
        LatticeVector ek = LatticeVector::basis(n, k);
        int e = au.eta.at(beta.c) * L.sign(permute(beta), permute(ek)) * L.sign(beta, ek);
        au.eta[alpha.c] = e;
    }

    au.matrix = Mat<Rational>(L.dim, L.dim);
    for (int i = 0; i < n; ++i) au.matrix.at(perm[i], i) = Rational(1);
    for (int t = 0; t < 2 * p; ++t) {
        const LatticeVector& alpha = L.roots[t];
        LatticeVector pos = alpha.is_positive() ? alpha : -alpha;
        int e = au.eta.at(pos.c);
        au.matrix.at(L.root_index(permute(alpha)), n + t) = Rational(e);
    }

    // the sign propagation is forced, so any failure here is an internal bug
    for (int u = 0; u < L.dim; ++u)
        for (int v = u + 1; v < L.dim; ++v) {
            auto lhs = L.zero();
            for (const auto& [idx, coef] : L.table[u][v])
                for (int r = 0; r < L.dim; ++r)
                    if (!is_zero(au.matrix.at(r, idx))) lhs[r] += au.matrix.at(r, idx) * coef;
            std::vector<Rational> gu(L.dim, Rational(0)), gv(L.dim, Rational(0));
            for (int r = 0; r < L.dim; ++r) {
                gu[r] = au.matrix.at(r, u);
                gv[r] = au.matrix.at(r, v);
            }
            if (lhs != L.bracket(gu, gv))
                throw std::logic_error("lift_automorphism: sign propagation inconsistent at basis pair " +
                                       std::to_string(u) + "," + std::to_string(v));
        }

    Mat<Rational> pw = au.matrix;
    Mat<Rational> id = Mat<Rational>::identity(L.dim);
    au.order = 1;
    while (!(pw == id)) {
        pw = pw.mul(au.matrix);
        ++au.order;
        if (au.order > 4 * L.dim) throw std::logic_error("lift_automorphism: order overflow");
    }
    return au;
}

inline std::vector<LiftedAutomorphism> lift_group_action(const FiniteLieAlgebra& L,
                                                         const MonomialAction& induced) {
    std::vector<LiftedAutomorphism> out;
    for (const auto& vp : induced.vertex_perm) out.push_back(lift_automorphism(L, vp));
    return out;
}

namespace detail {

inline std::vector<Rational> row_of(const Mat<Rational>& m, int i) {
    std::vector<Rational> out(static_cast<size_t>(m.cols));
    for (int t = 0; t < m.cols; ++t) out[t] = m.at(i, t);
    return out;
}

inline long long matrix_corank(const IntMat& m) {
    Mat<Rational> q(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) q.at(i, j) = rat(m.at(i, j));
    return m.rows - rank(q);
}

// coordinates of v against a basis already in reduced row echelon form;
// empty when v is outside the span
inline std::optional<std::vector<Rational>> rref_coords(const Mat<Rational>& basis,
                                                        std::vector<Rational> v) {
    if (static_cast<int>(v.size()) != basis.cols) throw std::invalid_argument("rref_coords shape");
    std::vector<Rational> co(static_cast<size_t>(basis.rows), Rational(0));
    for (int r = 0; r < basis.rows; ++r) {
        int p = -1;
        for (int c = 0; c < basis.cols; ++c)
            if (!is_zero(basis.at(r, c))) {
                p = c;
                break;
            }
        if (p < 0) continue;
        Rational f = v[static_cast<size_t>(p)];
        if (is_zero(f)) continue;
        co[static_cast<size_t>(r)] = f;
        for (int c = p; c < basis.cols; ++c) v[static_cast<size_t>(c)] -= f * basis.at(r, c);
    }
    for (const auto& x : v)
        if (!is_zero(x)) return std::nullopt;
    return co;
}

inline Mat<Rational> mat_power_check_nilpotent(const Mat<Rational>& m) {
    Mat<Rational> pw = m;
    for (int k = 1; k < m.rows; ++k) pw = pw.mul(m);
    return pw;
}

}  // namespace detail

struct Subalgebra {
    Mat<Rational> basis;  // canonical rref rows, coordinates in the parent
    bool closed = false;
    int dim() const { return basis.rows; }
};

inline Subalgebra fixed_subalgebra(const FiniteLieAlgebra& L,
                                   const std::vector<LiftedAutomorphism>& gens) {
    Subalgebra sub;
    if (gens.empty()) {
        sub.basis = Mat<Rational>::identity(L.dim);
    } else {
        Mat<Rational> sys(static_cast<int>(gens.size()) * L.dim, L.dim);
        for (size_t k = 0; k < gens.size(); ++k)
            for (int i = 0; i < L.dim; ++i)
                for (int j = 0; j < L.dim; ++j)
                    sys.at(static_cast<int>(k) * L.dim + i, j) =
                        gens[k].matrix.at(i, j) - (i == j ? Rational(1) : Rational(0));
        sub.basis = row_basis(nullspace(sys));
    }
    sub.closed = true;
    for (int i = 0; i < sub.basis.rows && sub.closed; ++i)
        for (int j = i; j < sub.basis.rows && sub.closed; ++j) {
            std::vector<Rational> x(L.dim), y(L.dim);
            for (int t = 0; t < L.dim; ++t) {
                x[t] = sub.basis.at(i, t);
                y[t] = sub.basis.at(j, t);
            }
            if (!detail::rref_coords(sub.basis, L.bracket(x, y))) sub.closed = false;
        }
    return sub;
}

// breadth-first bracket closure of a spanning set
inline Subalgebra generate_subalgebra(const FiniteLieAlgebra& L,
                                      const std::vector<std::vector<Rational>>& seeds) {
    Mat<Rational> cur(static_cast<int>(seeds.size()), L.dim);
    for (size_t i = 0; i < seeds.size(); ++i)
        for (int t = 0; t < L.dim; ++t) cur.at(static_cast<int>(i), t) = seeds[i][t];
    cur = row_basis(cur);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<Rational>> fresh;
        for (int i = 0; i < cur.rows; ++i)
            for (int j = i + 1; j < cur.rows; ++j) {
                std::vector<Rational> x(L.dim), y(L.dim);
                for (int t = 0; t < L.dim; ++t) {
                    x[t] = cur.at(i, t);
                    y[t] = cur.at(j, t);
                }
                auto br = L.bracket(x, y);
                if (!detail::rref_coords(cur, br)) fresh.push_back(br);
            }
        if (!fresh.empty()) {
            Mat<Rational> next(cur.rows + static_cast<int>(fresh.size()), L.dim);
            for (int i = 0; i < cur.rows; ++i)
                for (int t = 0; t < L.dim; ++t) next.at(i, t) = cur.at(i, t);
            for (size_t k = 0; k < fresh.size(); ++k)
                for (int t = 0; t < L.dim; ++t)
                    next.at(cur.rows + static_cast<int>(k), t) = fresh[k][t];
            Mat<Rational> reduced = row_basis(next);
            if (reduced.rows > cur.rows) grew = true;
            cur = reduced;
        }
    }
    Subalgebra sub;
    sub.basis = cur;
    sub.closed = true;
    return sub;
}

// Full comparison between the fixed subalgebra of the new quiver's Lie
// algebra and the Lie algebra of the folded valued graph: folded Chevalley
// generators and their relations, the fixed Cartan functionals, dimension
// and generation, the weight-space decomposition, and nilpotency.
struct FixedAlgebraReport {
    ValidationReport checks;
    long long dim_algebra = 0;        // ambient algebra of the new quiver
    long long dim_fixed = 0;          // fixed subalgebra
    long long dim_expected = 0;       // roots of the fold plus rank plus corank
    long long dim_cartan_fixed = 0;   // invariant part of the annihilator subspace
    std::vector<int> lift_orders;

    bool ok() const { return checks.valid(); }
    std::string str() const {
        std::ostringstream os;
        os << "fixed subalgebra " << dim_fixed << " of " << dim_algebra << ", expected "
           << dim_expected << ", cartan part " << dim_cartan_fixed << "\n"
           << checks.str();
        return os.str();
    }
};

inline FixedAlgebraReport verify_fixed_algebra(const FoldingMaps& fm) {
    if (!classify(cartan_of_quiver(fm.q)).all_finite())
        throw std::invalid_argument("verify_fixed_algebra: base quiver is not of finite type");
    if (!classify(fm.form_qhat.c).all_finite())
        throw std::invalid_argument("verify_fixed_algebra: new quiver is not of finite type");

    FixedAlgebraReport rep;
    auto push = [&](const std::string& name, bool ok, const std::string& witness) {
        rep.checks.checks.push_back({name, ok, ok ? std::string{} : witness});
    };

    FiniteLieAlgebra L = build_finite_lie_algebra(fm.mk.quiver);
    std::vector<LiftedAutomorphism> lifts = lift_group_action(L, fm.mk.induced);
    for (const auto& au : lifts) rep.lift_orders.push_back(au.order);
    Subalgebra fixed = fixed_subalgebra(L, lifts);

    int nhat = L.n;
    int ni = fm.rank_gamma();
    const IntMat& cg = fm.gamma.c;
    const IntMat& ahat = fm.form_qhat.c;
    RootSystemView rg = enumerate_roots(fm.form_gamma);
    long long corank = detail::matrix_corank(fm.gamma.c);
    rep.dim_algebra = L.dim;
    rep.dim_fixed = fixed.dim();
    rep.dim_expected = 2 * static_cast<long long>(rg.real_pos.size()) + ni + corank;

    std::vector<std::vector<int>> fiber(static_cast<size_t>(ni));
    for (int w = 0; w < nhat; ++w)
        fiber[static_cast<size_t>(fm.orbits().orbit_of_vertex[fm.mk.vertices[w].base])].push_back(w);

    std::vector<std::vector<Rational>> gx(static_cast<size_t>(ni)), gy(static_cast<size_t>(ni)),
        gh(static_cast<size_t>(ni));
    for (int i = 0; i < ni; ++i) {
        gx[i] = L.zero();
        gy[i] = L.zero();
        gh[i] = L.zero();
        for (int w : fiber[static_cast<size_t>(i)]) {
            auto add = [&](std::vector<Rational>& dst, const std::vector<Rational>& src) {
                for (int t = 0; t < L.dim; ++t) dst[t] += src[t];
            };
            add(gx[i], L.chevalley_e(w));
            add(gy[i], L.chevalley_f(w));
            add(gh[i], L.chevalley_h(w));
        }
    }

    {
        bool ok = fixed.closed;
        std::string wit = ok ? "" : "bracket of fixed vectors leaves the fixed space";
        for (int i = 0; i < ni && ok; ++i)
            if (!detail::rref_coords(fixed.basis, gx[i]) || !detail::rref_coords(fixed.basis, gy[i]) ||
                !detail::rref_coords(fixed.basis, gh[i])) {
                ok = false;
                wit = "folded generator " + std::to_string(i) + " is not invariant";
            }
        push("fixed-space", ok, wit);
    }

    {
        bool ok = true;
        std::string wit;
        for (int i = 0; i < ni && ok; ++i)
            for (int j = 0; j < ni && ok; ++j) {
                auto xy = L.bracket(gx[i], gy[j]);
                auto want = L.zero();
                if (i == j) want = gh[i];
                if (xy != want) {
                    ok = false;
                    wit = "[X_" + std::to_string(i) + ", Y_" + std::to_string(j) + "] is wrong";
                }
                auto hx = L.bracket(gh[i], gx[j]);
                auto hy = L.bracket(gh[i], gy[j]);
                Rational c = rat(cg.at(i, j));
                auto wx = L.zero();
                auto wy = L.zero();
                for (int t = 0; t < L.dim; ++t) {
                    wx[t] = c * gx[j][t];
                    wy[t] = -c * gy[j][t];
                }
                if (hx != wx || hy != wy) {
                    ok = false;
                    wit = "[H_" + std::to_string(i) + ", .] has the wrong eigenvalue on slot " +
                          std::to_string(j);
                }
            }
        push("folded-generator-relations", ok, wit);
    }

    {
        bool ok = true;
        std::string wit;
        for (int i = 0; i < ni && ok; ++i)
            for (int j = 0; j < ni && ok; ++j) {
                if (i == j) continue;
                long long m = 1 - cg.at(i, j);
                auto px = gx[j];
                auto py = gy[j];
                for (long long t = 0; t < m; ++t) {
                    px = L.bracket(gx[i], px);
                    py = L.bracket(gy[i], py);
                }
                if (px != L.zero() || py != L.zero()) {
                    ok = false;
                    wit = "power " + std::to_string(m) + " of ad on pair " + std::to_string(i) +
                          "," + std::to_string(j) + " does not vanish";
                }
            }
        push("folded-serre-relations", ok, wit);
    }

    Mat<Rational> cartan_fixed(0, 0);
    {
        // difference functionals within a fiber, then invariance under the lifts
        std::vector<std::vector<Rational>> rows;
        for (int i = 0; i < ni; ++i) {
            const auto& fb = fiber[static_cast<size_t>(i)];
            for (size_t t = 1; t < fb.size(); ++t) {
                std::vector<Rational> row(static_cast<size_t>(nhat));
                for (int u = 0; u < nhat; ++u)
                    row[u] = rat(ahat.at(u, fb[0]) - ahat.at(u, fb[t]));
                rows.push_back(row);
            }
        }
        for (const auto& au : lifts)
            for (int u = 0; u < nhat; ++u) {
                std::vector<Rational> row(static_cast<size_t>(nhat));
                bool nonzero = false;
                for (int v = 0; v < nhat; ++v) {
                    row[v] = au.matrix.at(u, v) - (u == v ? Rational(1) : Rational(0));
                    if (!is_zero(row[v])) nonzero = true;
                }
                if (nonzero) rows.push_back(row);
            }
        Mat<Rational> sys(static_cast<int>(rows.size()), nhat);
        for (size_t r = 0; r < rows.size(); ++r)
            for (int u = 0; u < nhat; ++u) sys.at(static_cast<int>(r), u) = rows[r][u];
        cartan_fixed = rows.empty() ? Mat<Rational>::identity(nhat) : row_basis(nullspace(sys));
        rep.dim_cartan_fixed = cartan_fixed.rows;

        bool ok = rep.dim_cartan_fixed == ni + corank;
        std::string wit = ok ? "" : "invariant annihilator has dimension " +
                                        std::to_string(rep.dim_cartan_fixed);
        for (int i = 0; i < ni && ok; ++i) {
            std::vector<Rational> hcart(gh[i].begin(), gh[i].begin() + nhat);
            if (!detail::rref_coords(cartan_fixed, hcart)) {
                ok = false;
                wit = "folded coroot " + std::to_string(i) + " misses the invariant annihilator";
            }
            for (int j = 0; j < ni && ok; ++j)
                for (int w : fiber[static_cast<size_t>(j)]) {
                    Rational s(0);
                    for (int u : fiber[static_cast<size_t>(i)]) s += rat(ahat.at(u, w));
                    if (s != rat(cg.at(i, j))) {
                        ok = false;
                        wit = "functional at vertex " + std::to_string(w) +
                              " disagrees with the fold entry " + std::to_string(i) + "," +
                              std::to_string(j);
                        break;
                    }
                }
        }
        push("fixed-cartan-functionals", ok, wit);
    }

    push("dimension-count", rep.dim_fixed == rep.dim_expected,
         "fixed dimension " + std::to_string(rep.dim_fixed) + " differs from expected " +
             std::to_string(rep.dim_expected));

    {
        std::vector<std::vector<Rational>> seeds;
        for (int i = 0; i < ni; ++i) {
            seeds.push_back(gx[i]);
            seeds.push_back(gy[i]);
            seeds.push_back(gh[i]);
        }
        Subalgebra gen = generate_subalgebra(L, seeds);
        bool ok = gen.dim() == fixed.dim();
        for (int r = 0; r < gen.basis.rows && ok; ++r)
            if (!detail::rref_coords(fixed.basis, detail::row_of(gen.basis, r))) ok = false;
        push("generation", ok,
             "folded generators close up at dimension " + std::to_string(gen.dim()));
    }

    {
        int m = fixed.dim();
        bool ok = true;
        std::string wit;
        std::vector<Mat<Rational>> ad_h(static_cast<size_t>(ni), Mat<Rational>(m, m));
        for (int i = 0; i < ni && ok; ++i)
            for (int t = 0; t < m && ok; ++t) {
                auto br = L.bracket(gh[i], detail::row_of(fixed.basis, t));
                auto co = detail::rref_coords(fixed.basis, br);
                if (!co) {
                    ok = false;
                    wit = "fixed space is not stable under the folded coroots";
                    break;
                }
                for (int r = 0; r < m; ++r) ad_h[static_cast<size_t>(i)].at(r, t) = (*co)[r];
            }

        long long total = 0;
        if (ok) {
            std::vector<LatticeVector> groots;
            for (const auto& rr : rg.real_pos) {
                groots.push_back(rr.root);
                groots.push_back(-rr.root);
            }
            for (const auto& alpha : groots) {
                Mat<Rational> sys(ni * m, m);
                for (int i = 0; i < ni; ++i) {
                    Rational lam(0);
                    for (int j = 0; j < ni; ++j) lam += rat(cg.at(i, j) * alpha.c[j]);
                    for (int r = 0; r < m; ++r)
                        for (int t = 0; t < m; ++t)
                            sys.at(i * m + r, t) =
                                ad_h[static_cast<size_t>(i)].at(r, t) - (r == t ? lam : Rational(0));
                }
                long long d = nullspace(sys).rows;
                total += d;
                if (d != 1) {
                    ok = false;
                    wit = "weight space of " + alpha.str() + " has dimension " + std::to_string(d);
                    break;
                }
            }
        }
        if (ok) {
            Mat<Rational> sys(ni * m, m);
            for (int i = 0; i < ni; ++i)
                for (int r = 0; r < m; ++r)
                    for (int t = 0; t < m; ++t)
                        sys.at(i * m + r, t) = ad_h[static_cast<size_t>(i)].at(r, t);
            Mat<Rational> zw = nullspace(sys);
            total += zw.rows;
            if (zw.rows != rep.dim_cartan_fixed) {
                ok = false;
                wit = "zero weight space has dimension " + std::to_string(zw.rows);
            }
            for (int r = 0; r < zw.rows && ok; ++r) {
                auto amb = L.zero();
                for (int t = 0; t < m; ++t)
                    for (int u = 0; u < L.dim; ++u) amb[u] += zw.at(r, t) * fixed.basis.at(t, u);
                std::vector<Rational> cart(amb.begin(), amb.begin() + nhat);
                for (int u = nhat; u < L.dim; ++u)
                    if (!is_zero(amb[u])) {
                        ok = false;
                        wit = "zero weight vector has a root component";
                    }
                if (ok && !detail::rref_coords(cartan_fixed, cart)) {
                    ok = false;
                    wit = "zero weight vector misses the invariant annihilator";
                }
            }
            if (ok && total != rep.dim_fixed) {
                ok = false;
                wit = "weight dimensions sum to " + std::to_string(total);
            }
        }
        push("weight-decomposition", ok, wit);
    }

    {
        int m = fixed.dim();
        bool ok = true;
        std::string wit;
        for (int i = 0; i < ni && ok; ++i)
            for (const auto& gen : {gx[i], gy[i]}) {
                Mat<Rational> ad(m, m);
                for (int t = 0; t < m && ok; ++t) {
                    auto co = detail::rref_coords(fixed.basis, L.bracket(gen, detail::row_of(fixed.basis, t)));
                    if (!co) {
                        ok = false;
                        wit = "fixed space is not stable under a folded generator";
                        break;
                    }
                    for (int r = 0; r < m; ++r) ad.at(r, t) = (*co)[r];
                }
                if (ok && !(detail::mat_power_check_nilpotent(ad) == Mat<Rational>(m, m))) {
                    ok = false;
                    wit = "ad of folded generator " + std::to_string(i) + " is not nilpotent";
                }
                if (!ok) break;
            }
        push("nilpotent-generators", ok, wit);
    }

    {
        bool ok = true;
        std::string wit;
        long long gord = fm.act.group.order();
        for (int i = 0; i < ni && ok; ++i)
            for (int j = 0; j < ni && ok; ++j) {
                Rational lhs = rat(fm.gamma.b.at(i, j)) /
                               rat(fm.gamma.d[static_cast<size_t>(i)] *
                                        fm.gamma.d[static_cast<size_t>(j)]);
                Rational rhs(0);
                for (int u : fiber[static_cast<size_t>(i)])
                    for (int v : fiber[static_cast<size_t>(j)]) rhs += rat(ahat.at(u, v));
                rhs /= rat(gord);
                if (lhs != rhs) {
                    ok = false;
                    wit = "form entry " + std::to_string(i) + "," + std::to_string(j) +
                          " does not rescale by the group order";
                }
            }
        push("form-scaling", ok, wit);
    }

    return rep;
}

// Realization-level fold data: a minimal realization of the new quiver's
// matrix with a basis completion chosen on vertex orbits of the induced
// action, the group acting by permutation matrices, and the invariant part
// of the annihilator of the fiber difference functionals.
struct FoldRealizationReport {
    ValidationReport checks;
    long long dim_h = 0;
    long long dim_center = 0;
    long long dim_coroot_span = 0;
    long long dim_annihilator = 0;
    long long dim_annihilator_fixed = 0;
    long long dim_ann_in_complement = 0;
    bool equivariant = false;

    bool ok() const { return checks.valid(); }
    std::string str() const {
        std::ostringstream os;
        os << "realization dim " << dim_h << ", center " << dim_center << ", coroot span "
           << dim_coroot_span << ", annihilator " << dim_annihilator << " (fixed "
           << dim_annihilator_fixed << ", complement part " << dim_ann_in_complement << ")\n"
           << checks.str();
        return os.str();
    }
};

inline FoldRealizationReport verify_fold_realization(const FoldingMaps& fm) {
    FoldRealizationReport rep;
    auto push = [&](const std::string& name, bool ok, const std::string& witness) {
        rep.checks.checks.push_back({name, ok, ok ? std::string{} : witness});
    };

    IntMat ahat = fm.form_qhat.c;
    int nhat = ahat.rows;
    int ni = fm.rank_gamma();

    Mat<Rational> block(nhat, nhat);
    for (int w = 0; w < nhat; ++w)
        for (int u = 0; u < nhat; ++u) block.at(w, u) = rat(ahat.at(u, w));
    int l = rank(block);
    int extra = nhat - l;
    int dimh = 2 * nhat - l;
    rep.dim_h = dimh;
    rep.dim_coroot_span = nhat;

    // orbits of the induced vertex action
    std::vector<int> orbit_of(static_cast<size_t>(nhat), -1);
    std::vector<std::vector<int>> vorbits;
    for (int w = 0; w < nhat; ++w) {
        if (orbit_of[w] >= 0) continue;
        std::vector<int> orb{w};
        orbit_of[w] = static_cast<int>(vorbits.size());
        for (size_t head = 0; head < orb.size(); ++head)
            for (const auto& vp : fm.mk.induced.vertex_perm) {
                int img = vp[static_cast<size_t>(orb[head])];
                if (orbit_of[img] < 0) {
                    orbit_of[img] = static_cast<int>(vorbits.size());
                    orb.push_back(img);
                }
            }
        std::sort(orb.begin(), orb.end());
        vorbits.push_back(orb);
    }

    // greedy equivariant completion by orbit indicator columns
    std::vector<std::vector<Rational>> added;
    {
        Mat<Rational> cur = block;
        int have = l;
        for (const auto& orb : vorbits) {
            if (have == nhat) break;
            std::vector<Rational> col(static_cast<size_t>(nhat), Rational(0));
            for (int w : orb) col[static_cast<size_t>(w)] = Rational(1);
            Mat<Rational> trial(nhat, cur.cols + 1);
            for (int w = 0; w < nhat; ++w) {
                for (int t = 0; t < cur.cols; ++t) trial.at(w, t) = cur.at(w, t);
                trial.at(w, cur.cols) = col[static_cast<size_t>(w)];
            }
            if (rank(trial) > have) {
                ++have;
                cur = trial;
                added.push_back(col);
            }
        }
        rep.equivariant = have == nhat;
    }
    if (!rep.equivariant) {
        // unit columns at a deterministic dependent set; the action checks are skipped
        added.clear();
        Mat<Rational> kept(0, nhat);
        for (int w = 0; w < nhat; ++w) {
            Mat<Rational> trial(kept.rows + 1, nhat);
            for (int r = 0; r < kept.rows; ++r)
                for (int t = 0; t < nhat; ++t) trial.at(r, t) = kept.at(r, t);
            for (int t = 0; t < nhat; ++t) trial.at(kept.rows, t) = block.at(w, t);
            if (rank(trial) > kept.rows) {
                kept = trial;
            } else {
                std::vector<Rational> col(static_cast<size_t>(nhat), Rational(0));
                col[static_cast<size_t>(w)] = Rational(1);
                added.push_back(col);
            }
        }
    }

    Mat<Rational> eps(nhat, dimh);
    for (int w = 0; w < nhat; ++w) {
        for (int u = 0; u < nhat; ++u) eps.at(w, u) = rat(ahat.at(u, w));
        for (size_t t = 0; t < added.size(); ++t)
            eps.at(w, nhat + static_cast<int>(t)) = added[t][static_cast<size_t>(w)];
    }
    push("functional-independence", rank(eps) == nhat,
         "completion leaves the functionals dependent");

    Mat<Rational> center = nullspace(eps);
    rep.dim_center = center.rows;
    push("center-dimension", rep.dim_center == extra,
         "kernel dimension " + std::to_string(rep.dim_center) + " instead of " +
             std::to_string(extra));

    // group action: permutation on the coroot block, identity on the completion
    std::vector<Mat<Rational>> sig;
    for (const auto& vp : fm.mk.induced.vertex_perm) {
        Mat<Rational> s(dimh, dimh);
        for (int u = 0; u < nhat; ++u) s.at(vp[static_cast<size_t>(u)], u) = Rational(1);
        for (int t = nhat; t < dimh; ++t) s.at(t, t) = Rational(1);
        sig.push_back(s);
    }
    if (rep.equivariant) {
        bool ok = true;
        std::string wit;
        for (size_t k = 0; k < sig.size() && ok; ++k) {
            const auto& vp = fm.mk.induced.vertex_perm[k];
            for (int w = 0; w < nhat && ok; ++w)
                for (int t = 0; t < dimh; ++t) {
                    Rational s(0);
                    for (int r = 0; r < dimh; ++r) s += eps.at(vp[static_cast<size_t>(w)], r) * sig[k].at(r, t);
                    if (s != eps.at(w, t)) {
                        ok = false;
                        wit = "functional at vertex " + std::to_string(w) +
                              " is not compatible with generator " + std::to_string(k);
                        break;
                    }
                }
            if (ok) {
                long long m = fm.act.group.orders[k];
                Mat<Rational> pw = Mat<Rational>::identity(dimh);
                for (long long t = 0; t < m; ++t) pw = pw.mul(sig[k]);
                if (!(pw == Mat<Rational>::identity(dimh))) {
                    ok = false;
                    wit = "generator " + std::to_string(k) + " does not have order dividing " +
                          std::to_string(m);
                }
            }
        }
        push("action-compatibility", ok, wit);
    }

    // fibers over the orbit classes
    std::vector<std::vector<int>> fiber(static_cast<size_t>(ni));
    for (int w = 0; w < nhat; ++w)
        fiber[static_cast<size_t>(fm.orbits().orbit_of_vertex[fm.mk.vertices[w].base])].push_back(w);

    std::vector<std::vector<Rational>> diff;
    for (int i = 0; i < ni; ++i)
        for (size_t t = 1; t < fiber[static_cast<size_t>(i)].size(); ++t) {
            std::vector<Rational> row(static_cast<size_t>(dimh));
            for (int r = 0; r < dimh; ++r)
                row[r] = eps.at(fiber[static_cast<size_t>(i)][0], r) -
                         eps.at(fiber[static_cast<size_t>(i)][t], r);
            diff.push_back(row);
        }
    Mat<Rational> dmat(static_cast<int>(diff.size()), dimh);
    for (size_t r = 0; r < diff.size(); ++r)
        for (int t = 0; t < dimh; ++t) dmat.at(static_cast<int>(r), t) = diff[r][t];
    Mat<Rational> ann = diff.empty() ? Mat<Rational>::identity(dimh) : row_basis(nullspace(dmat));
    rep.dim_annihilator = ann.rows;
    push("annihilator-dimension", rep.dim_annihilator == nhat + ni - l,
         "difference annihilator has dimension " + std::to_string(rep.dim_annihilator));

    {
        std::vector<std::vector<Rational>> rows = diff;
        for (const auto& s : sig)
            for (int u = 0; u < dimh; ++u) {
                std::vector<Rational> row(static_cast<size_t>(dimh));
                bool nonzero = false;
                for (int v = 0; v < dimh; ++v) {
                    row[v] = s.at(u, v) - (u == v ? Rational(1) : Rational(0));
                    if (!is_zero(row[v])) nonzero = true;
                }
                if (nonzero) rows.push_back(row);
            }
        Mat<Rational> sys(static_cast<int>(rows.size()), dimh);
        for (size_t r = 0; r < rows.size(); ++r)
            for (int t = 0; t < dimh; ++t) sys.at(static_cast<int>(r), t) = rows[r][t];
        Mat<Rational> fixed = rows.empty() ? Mat<Rational>::identity(dimh) : row_basis(nullspace(sys));
        rep.dim_annihilator_fixed = fixed.rows;
        long long corank = detail::matrix_corank(fm.gamma.c);
        if (rep.equivariant)
            push("fixed-annihilator-dimension", rep.dim_annihilator_fixed == ni + corank,
                 "invariant annihilator has dimension " + std::to_string(rep.dim_annihilator_fixed));

        bool ok = true;
        std::string wit;
        for (int i = 0; i < ni && ok; ++i) {
            std::vector<Rational> hbar(static_cast<size_t>(dimh), Rational(0));
            for (int u : fiber[static_cast<size_t>(i)]) hbar[static_cast<size_t>(u)] = Rational(1);
            if (!in_row_space(fixed, hbar)) {
                ok = false;
                wit = "folded coroot " + std::to_string(i) + " misses the invariant annihilator";
            }
            for (int j = 0; j < ni && ok; ++j)
                for (int w : fiber[static_cast<size_t>(j)]) {
                    Rational s(0);
                    for (int t = 0; t < dimh; ++t) s += eps.at(w, t) * hbar[static_cast<size_t>(t)];
                    if (s != rat(fm.gamma.c.at(i, j))) {
                        ok = false;
                        wit = "fold pairing " + std::to_string(i) + "," + std::to_string(j) +
                              " evaluates wrongly at vertex " + std::to_string(w);
                        break;
                    }
                }
        }
        push("fold-pairings", ok, wit);
    }

    if (!added.empty()) {
        Mat<Rational> comp(static_cast<int>(added.size()), dimh);
        for (size_t t = 0; t < added.size(); ++t)
            comp.at(static_cast<int>(t), nhat + static_cast<int>(t)) = Rational(1);
        rep.dim_ann_in_complement = row_space_intersection(ann, comp).rows;
    }

    return rep;
}

}  // namespace quiverfold
