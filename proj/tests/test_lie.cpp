#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <quiverfold/fixtures.hpp>
#include <quiverfold/lie.hpp>

using namespace quiverfold;

namespace {

IntMat mat(int r, int c, std::vector<long long> vals) {
    IntMat m(r, c);
    m.a = std::move(vals);
    return m;
}

LatticeVector lv(std::vector<long long> v) { return LatticeVector{std::move(v)}; }

IntMat path_gcm(int n) {
    IntMat a(n, n);
    for (int i = 0; i < n; ++i) {
        a.at(i, i) = 2;
        if (i + 1 < n) {
            a.at(i, i + 1) = -1;
            a.at(i + 1, i) = -1;
        }
    }
    return a;
}

// Independent model for the path matrices: traceless (n+1) x (n+1) matrices
// under the commutator. The coroots and the simple root vectors have a fixed
// matrix image; every other basis image is forced one bracket at a time, and
// then all structure constants are compared against plain matrix arithmetic.
struct MatrixModel {
    int n;  // matrix size
    std::vector<std::vector<Rational>> image;

    static std::vector<Rational> unit(int n, int i, int j) {
        std::vector<Rational> m(static_cast<size_t>(n) * n, Rational(0));
        m[static_cast<size_t>(i) * n + j] = Rational(1);
        return m;
    }
    static std::vector<Rational> comm(int n, const std::vector<Rational>& a,
                                      const std::vector<Rational>& b) {
        std::vector<Rational> m(static_cast<size_t>(n) * n, Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational s(0);
                for (int k = 0; k < n; ++k)
                    s += a[static_cast<size_t>(i) * n + k] * b[static_cast<size_t>(k) * n + j] -
                         b[static_cast<size_t>(i) * n + k] * a[static_cast<size_t>(k) * n + j];
                m[static_cast<size_t>(i) * n + j] = s;
            }
        return m;
    }
};

// Builds the forced matrix images for the algebra of a path matrix and
// checks every basis bracket against the commutator.
void check_against_matrix_model(const FiniteLieAlgebra& L) {
    int rank = L.n;
    int n = rank + 1;
    MatrixModel mm;
    mm.n = n;
    mm.image.assign(static_cast<size_t>(L.dim), {});
    for (int i = 0; i < rank; ++i) {
        auto h = MatrixModel::unit(n, i, i);
        auto h2 = MatrixModel::unit(n, i + 1, i + 1);
        for (size_t t = 0; t < h.size(); ++t) h[t] -= h2[t];
        mm.image[static_cast<size_t>(i)] = h;
        mm.image[static_cast<size_t>(L.root_index(LatticeVector::basis(rank, i)))] =
            MatrixModel::unit(n, i, i + 1);
        auto f = MatrixModel::unit(n, i + 1, i);
        for (auto& e : f) e = -e;  // chevalley F_i = -x_{-e_i} maps to +E_{i+1,i}
        mm.image[static_cast<size_t>(L.root_index(-LatticeVector::basis(rank, i)))] = f;
    }
    // force the remaining images by height, using the algebra's own constants
    int p = (L.dim - rank) / 2;
    for (int t = 0; t < p; ++t) {
        const LatticeVector& alpha = L.roots[t];
        if (alpha.height() == 1) continue;
        for (int sgn = 0; sgn < 2; ++sgn) {
            LatticeVector a = sgn == 0 ? alpha : -alpha;
            int k = -1;
            for (int i = 0; i < rank; ++i) {
                LatticeVector b = alpha - LatticeVector::basis(rank, i);
                if (b.is_positive() && L.root_pos.count(b.c)) {
                    k = i;
                    break;
                }
            }
            REQUIRE(k >= 0);
            LatticeVector beta = alpha - LatticeVector::basis(rank, k);
            LatticeVector simple = LatticeVector::basis(rank, k);
            if (sgn == 1) {
                beta = -beta;
                simple = -simple;
            }
            int s = L.sign(beta, simple);  // [x_beta, x_simple] = s x_a
            auto m = MatrixModel::comm(n, mm.image[static_cast<size_t>(L.root_index(beta))],
                                       mm.image[static_cast<size_t>(L.root_index(simple))]);
            for (auto& e : m) e *= Rational(s);
            mm.image[static_cast<size_t>(L.root_index(a))] = m;
        }
    }
    // exhaustive comparison of all basis brackets
    for (int u = 0; u < L.dim; ++u)
        for (int v = 0; v < L.dim; ++v) {
            std::vector<Rational> want(static_cast<size_t>(n) * n, Rational(0));
            for (const auto& [idx, coef] : L.table[u][v])
                for (size_t t = 0; t < want.size(); ++t)
                    want[t] += coef * mm.image[static_cast<size_t>(idx)][t];
            auto got = MatrixModel::comm(n, mm.image[static_cast<size_t>(u)],
                                         mm.image[static_cast<size_t>(v)]);
            if (got != want) {
                INFO("basis pair " << u << "," << v);
                REQUIRE(got == want);
            }
        }
}

// Jacobi over all basis triples, using the sparse bracket table directly.
void check_jacobi_exhaustive(const FiniteLieAlgebra& L) {
    auto sparse_bracket = [&](const std::vector<std::pair<int, Rational>>& x, int w) {
        std::map<int, Rational> acc;
        for (const auto& [u, cu] : x)
            for (const auto& [idx, coef] : L.table[u][w]) acc[idx] += cu * coef;
        return acc;
    };
    // antisymmetry of the table itself
    for (int u = 0; u < L.dim; ++u)
        for (int v = u; v < L.dim; ++v) {
            std::map<int, Rational> s;
            for (const auto& [idx, coef] : L.table[u][v]) s[idx] += coef;
            for (const auto& [idx, coef] : L.table[v][u]) s[idx] += coef;
            for (const auto& [idx, coef] : s) {
                INFO("antisymmetry at " << u << "," << v);
                REQUIRE(is_zero(coef));
            }
        }
    long long bad = 0;
    for (int u = 0; u < L.dim; ++u)
        for (int v = u + 1; v < L.dim; ++v)
            for (int w = v + 1; w < L.dim; ++w) {
                std::map<int, Rational> acc = sparse_bracket(L.table[u][v], w);
                for (const auto& [idx, coef] : sparse_bracket(L.table[v][w], u)) acc[idx] += coef;
                for (const auto& [idx, coef] : sparse_bracket(L.table[w][u], v)) acc[idx] += coef;
                for (const auto& [idx, coef] : acc)
                    if (!is_zero(coef)) ++bad;
            }
    REQUIRE(bad == 0);
}

void check_serre(const FiniteLieAlgebra& L) {
    for (int i = 0; i < L.n; ++i)
        for (int j = 0; j < L.n; ++j) {
            if (i == j) continue;
            long long m = 1 - L.gcm.at(i, j);
            auto px = L.chevalley_e(j);
            auto py = L.chevalley_f(j);
            for (long long t = 0; t < m; ++t) {
                px = L.bracket(L.chevalley_e(i), px);
                py = L.bracket(L.chevalley_f(i), py);
            }
            INFO("pair " << i << "," << j);
            REQUIRE(px == L.zero());
            REQUIRE(py == L.zero());
        }
}

}  // namespace

TEST_CASE("path algebras match the traceless matrix model") {
    for (int rank = 1; rank <= 3; ++rank) {
        INFO("rank " << rank);
        FiniteLieAlgebra L = build_finite_lie_algebra(path_gcm(rank));
        REQUIRE(L.dim == rank + rank * (rank + 1));
        check_against_matrix_model(L);
    }
}

TEST_CASE("chevalley generators and basic brackets") {
    FiniteLieAlgebra L = build_finite_lie_algebra(path_gcm(2));
    REQUIRE(L.dim == 8);
    REQUIRE(L.roots[0] == lv({0, 1}));
    REQUIRE(L.roots[1] == lv({1, 0}));
    REQUIRE(L.roots[2] == lv({1, 1}));

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto br = L.bracket(L.chevalley_e(i), L.chevalley_f(j));
            REQUIRE(br == (i == j ? L.chevalley_h(i) : L.zero()));
            auto he = L.bracket(L.chevalley_h(i), L.chevalley_e(j));
            auto want = L.zero();
            for (int t = 0; t < L.dim; ++t) want[t] = rat(L.gcm.at(i, j)) * L.chevalley_e(j)[t];
            REQUIRE(he == want);
        }

    // the sign on the root lattice is bimultiplicative and -1 on the diagonal
    REQUIRE(L.sign(lv({1, 0}), lv({1, 0})) == -1);
    REQUIRE(L.sign(lv({0, 1}), lv({0, 1})) == -1);
    REQUIRE(L.sign(lv({1, 1}), lv({1, 0})) ==
            L.sign(lv({1, 0}), lv({1, 0})) * L.sign(lv({0, 1}), lv({1, 0})));
    REQUIRE(L.sign(lv({1, 0}), lv({0, 1})) * L.sign(lv({0, 1}), lv({1, 0})) == -1);

    // [x_theta, x_-theta] is minus the sum of the coroots
    auto theta = L.basis_vec(L.root_index(lv({1, 1})));
    auto mtheta = L.basis_vec(L.root_index(lv({-1, -1})));
    auto want = L.zero();
    want[0] = Rational(-1);
    want[1] = Rational(-1);
    REQUIRE(L.bracket(theta, mtheta) == want);

    REQUIRE_THROWS_AS(build_finite_lie_algebra(mat(2, 2, {2, -3, -1, 2})), std::invalid_argument);
    REQUIRE_THROWS_AS(build_finite_lie_algebra(mat(2, 2, {2, -2, -2, 2})), std::invalid_argument);
    REQUIRE_THROWS_AS(build_finite_lie_algebra(mat(2, 2, {2, 1, 1, 2})), std::invalid_argument);
    REQUIRE_THROWS_AS(L.root_index(lv({2, 1})), std::invalid_argument);
}

TEST_CASE("jacobi and serre relations hold exhaustively") {
    std::vector<FiniteLieAlgebra> algebras;
    algebras.push_back(build_finite_lie_algebra(path_gcm(2)));
    algebras.push_back(build_finite_lie_algebra(
        mat(4, 4, {2, -1, -1, -1, -1, 2, 0, 0, -1, 0, 2, 0, -1, 0, 0, 2})));
    algebras.push_back(build_finite_lie_algebra(build_mckay(fixture_star_z6().quiver,
                                                            fixture_star_z6().action)
                                                    .quiver));
    algebras.push_back(build_finite_lie_algebra(build_mckay(fixture_double_a5().quiver,
                                                            fixture_double_a5().action)
                                                    .quiver));
    for (size_t k = 0; k < algebras.size(); ++k) {
        INFO("algebra " << k << " of dimension " << algebras[k].dim);
        check_jacobi_exhaustive(algebras[k]);
        check_serre(algebras[k]);
    }
}

TEST_CASE("direct sum splits into ideals") {
    FixtureCase fx = fixture_star_z6();
    McKayQuiver mk = build_mckay(fx.quiver, fx.action);
    FiniteLieAlgebra L = build_finite_lie_algebra(mk.quiver);
    REQUIRE(L.dim == 56);
    std::vector<std::vector<int>> comp_lists = mk.quiver.components();
    std::vector<int> comp(static_cast<size_t>(mk.quiver.num_vertices()), -1);
    for (size_t c = 0; c < comp_lists.size(); ++c)
        for (int v : comp_lists[c]) comp[static_cast<size_t>(v)] = static_cast<int>(c);
    auto comp_of_basis = [&](int u) {
        if (u < L.n) return comp[u];
        const LatticeVector& a = L.roots[static_cast<size_t>(u - L.n)];
        for (int v = 0; v < L.n; ++v)
            if (a.c[static_cast<size_t>(v)] != 0) return comp[v];
        return -1;
    };
    for (int u = 0; u < L.dim; ++u)
        for (int v = 0; v < L.dim; ++v) {
            if (comp_of_basis(u) == comp_of_basis(v)) continue;
            for (const auto& [idx, coef] : L.table[u][v]) {
                (void)idx;
                REQUIRE(is_zero(coef));
            }
        }
}

TEST_CASE("minimal realizations") {
    Realization g2 = minimal_realization(mat(2, 2, {2, -3, -1, 2}));
    REQUIRE(g2.dim_h == 2);
    REQUIRE(g2.center.rows == 0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            std::vector<Rational> h(2, Rational(0));
            h[static_cast<size_t>(i)] = Rational(1);
            REQUIRE(g2.eval(j, h) == rat(g2.gcm.at(i, j)));
        }

    Realization kr = minimal_realization(mat(2, 2, {2, -2, -2, 2}));
    REQUIRE(kr.dim_h == 3);
    REQUIRE(kr.l == 1);
    REQUIRE(kr.center.rows == 1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            std::vector<Rational> h(3, Rational(0));
            h[static_cast<size_t>(i)] = Rational(1);
            REQUIRE(kr.eval(j, h) == rat(kr.gcm.at(i, j)));
        }
    // the kernel element pairs to zero against both functionals
    std::vector<Rational> z(3);
    for (int t = 0; t < 3; ++t) z[static_cast<size_t>(t)] = kr.center.at(0, t);
    REQUIRE(kr.eval(0, z) == Rational(0));
    REQUIRE(kr.eval(1, z) == Rational(0));

    Realization a1 = minimal_realization(mat(1, 1, {2}));
    REQUIRE(a1.dim_h == 1);
    REQUIRE(a1.eval(0, {Rational(1)}) == Rational(2));

    REQUIRE_THROWS_AS(minimal_realization(mat(2, 3, {2, -1, 0, -1, 2, 0})), std::invalid_argument);
    REQUIRE_THROWS_AS(minimal_realization(mat(2, 2, {2, -1, 0, 2})), std::invalid_argument);
    REQUIRE_THROWS_AS(minimal_realization(mat(2, 2, {3, -1, -1, 2})), std::invalid_argument);
}

TEST_CASE("lifting vertex permutations to the algebra") {
    FiniteLieAlgebra L = build_finite_lie_algebra(path_gcm(2));

    LiftedAutomorphism id = lift_automorphism(L, {0, 1});
    REQUIRE(id.matrix == Mat<Rational>::identity(8));
    REQUIRE(id.order == 1);

    LiftedAutomorphism sw = lift_automorphism(L, {1, 0});
    REQUIRE(sw.order == 2);
    REQUIRE(sw.apply(L.chevalley_e(0)) == L.chevalley_e(1));
    REQUIRE(sw.apply(L.chevalley_h(0)) == L.chevalley_h(1));
    // the highest root is fixed and picks up the forced sign
    auto theta = L.basis_vec(L.root_index(lv({1, 1})));
    auto want = L.zero();
    for (int t = 0; t < 8; ++t) want[t] = -theta[t];
    REQUIRE(sw.apply(theta) == want);

    FiniteLieAlgebra a3 = build_finite_lie_algebra(path_gcm(3));
    REQUIRE_THROWS_AS(lift_automorphism(a3, {1, 0, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(lift_automorphism(a3, {0, 0, 1}), std::invalid_argument);
    REQUIRE_NOTHROW(lift_automorphism(a3, {2, 1, 0}));
}

TEST_CASE("lifted group action on the doubled path") {
    FixtureCase fx = fixture_double_a5();
    McKayQuiver mk = build_mckay(fx.quiver, fx.action);
    FiniteLieAlgebra L = build_finite_lie_algebra(mk.quiver);
    REQUIRE(L.dim == 28);

    std::vector<LiftedAutomorphism> lifts = lift_group_action(L, mk.induced);
    REQUIRE(lifts.size() == 2);
    REQUIRE(lifts[0].order == 2);
    REQUIRE(lifts[1].matrix == Mat<Rational>::identity(28));

    // the first generator swaps the two leg generators and fixes the rest
    REQUIRE(lifts[0].apply(L.chevalley_e(2)) == L.chevalley_e(3));
    REQUIRE(lifts[0].apply(L.chevalley_e(3)) == L.chevalley_e(2));
    REQUIRE(lifts[0].apply(L.chevalley_e(0)) == L.chevalley_e(0));
    REQUIRE(lifts[0].apply(L.chevalley_e(1)) == L.chevalley_e(1));
    REQUIRE(lifts[0].matrix.mul(lifts[1].matrix) == lifts[1].matrix.mul(lifts[0].matrix));
}

TEST_CASE("lifted group action on the hexagonal star") {
    FixtureCase fx = fixture_star_z6();
    McKayQuiver mk = build_mckay(fx.quiver, fx.action);
    FiniteLieAlgebra L = build_finite_lie_algebra(mk.quiver);

    std::vector<LiftedAutomorphism> lifts = lift_group_action(L, mk.induced);
    REQUIRE(lifts.size() == 1);
    REQUIRE(lifts[0].order == 6);

    // basis vectors over one component land in the other component
    std::vector<std::vector<int>> comp_lists = mk.quiver.components();
    std::vector<int> comp(static_cast<size_t>(mk.quiver.num_vertices()), -1);
    for (size_t c = 0; c < comp_lists.size(); ++c)
        for (int v : comp_lists[c]) comp[static_cast<size_t>(v)] = static_cast<int>(c);
    auto comp_of_basis = [&](int u) {
        if (u < L.n) return comp[u];
        const LatticeVector& a = L.roots[static_cast<size_t>(u - L.n)];
        for (int v = 0; v < L.n; ++v)
            if (a.c[static_cast<size_t>(v)] != 0) return comp[v];
        return -1;
    };
    for (int u = 0; u < L.dim; ++u) {
        auto img = lifts[0].apply(L.basis_vec(u));
        for (int r = 0; r < L.dim; ++r)
            if (!is_zero(img[r])) REQUIRE(comp_of_basis(r) != comp_of_basis(u));
    }
}

TEST_CASE("fixed subalgebras of the running fixtures") {
    {
        FixtureCase fx = fixture_double_a5();
        McKayQuiver mk = build_mckay(fx.quiver, fx.action);
        FiniteLieAlgebra L = build_finite_lie_algebra(mk.quiver);
        Subalgebra sub = fixed_subalgebra(L, lift_group_action(L, mk.induced));
        REQUIRE(sub.dim() == 21);
        REQUIRE(sub.closed);
    }
    {
        FixtureCase fx = fixture_star_z6();
        McKayQuiver mk = build_mckay(fx.quiver, fx.action);
        FiniteLieAlgebra L = build_finite_lie_algebra(mk.quiver);
        Subalgebra sub = fixed_subalgebra(L, lift_group_action(L, mk.induced));
        REQUIRE(sub.dim() == 14);
        REQUIRE(sub.closed);
    }
    {
        FiniteLieAlgebra L = build_finite_lie_algebra(path_gcm(2));
        Subalgebra whole = fixed_subalgebra(L, {});
        REQUIRE(whole.dim() == L.dim);
        REQUIRE(whole.closed);

        std::vector<std::vector<Rational>> seeds;
        for (int i = 0; i < 2; ++i) {
            seeds.push_back(L.chevalley_e(i));
            seeds.push_back(L.chevalley_f(i));
        }
        REQUIRE(generate_subalgebra(L, seeds).dim() == 8);
    }
}

TEST_CASE("fixed algebra report on the hexagonal star") {
    FixtureCase fx = fixture_star_z6();
    FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
    FixedAlgebraReport rep = verify_fixed_algebra(fm);
    INFO(rep.str());
    REQUIRE(rep.ok());
    REQUIRE(rep.dim_algebra == 56);
    REQUIRE(rep.dim_fixed == 14);
    REQUIRE(rep.dim_expected == 14);
    REQUIRE(rep.dim_cartan_fixed == 2);
    REQUIRE(rep.lift_orders == std::vector<int>{6});
}

TEST_CASE("fixed algebra report on the doubled path") {
    FixtureCase fx = fixture_double_a5();
    FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
    FixedAlgebraReport rep = verify_fixed_algebra(fm);
    INFO(rep.str());
    REQUIRE(rep.ok());
    REQUIRE(rep.dim_algebra == 28);
    REQUIRE(rep.dim_fixed == 21);
    REQUIRE(rep.dim_expected == 21);
    REQUIRE(rep.dim_cartan_fixed == 3);
    REQUIRE(rep.lift_orders == std::vector<int>{2, 1});
}

TEST_CASE("fixed algebra reports across the fixture families") {
    for (int n = 1; n <= 2; ++n) {
        INFO("doubled path of parameter " << n);
        FixtureCase fx = fixture_path_fold(n);
        FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
        FixedAlgebraReport rep = verify_fixed_algebra(fm);
        INFO(rep.str());
        REQUIRE(rep.ok());
        REQUIRE(rep.dim_fixed == (n + 1) * (2 * n + 3));
    }
    for (int n = 3; n <= 4; ++n) {
        INFO("forked graph of parameter " << n);
        FixtureCase fx = fixture_fork_fold(n);
        FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
        FixedAlgebraReport rep = verify_fixed_algebra(fm);
        INFO(rep.str());
        REQUIRE(rep.ok());
        REQUIRE(rep.dim_fixed == (n - 1) * (2 * n - 1));
    }
    {
        FixtureCase fx = fixture_cycle_fold();
        FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
        REQUIRE_THROWS_AS(verify_fixed_algebra(fm), std::invalid_argument);
    }
}

TEST_CASE("realization level fold reports") {
    {
        FixtureCase fx = fixture_cycle_fold();
        FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
        FoldRealizationReport rep = verify_fold_realization(fm);
        INFO(rep.str());
        REQUIRE(rep.ok());
        REQUIRE(rep.equivariant);
        REQUIRE(rep.dim_h == 3);
        REQUIRE(rep.dim_center == 1);
        REQUIRE(rep.dim_coroot_span == 2);
        REQUIRE(rep.dim_annihilator == 3);
        REQUIRE(rep.dim_annihilator_fixed == 3);
        REQUIRE(rep.dim_ann_in_complement == 1);
    }
    {
        FixtureCase fx = fixture_star_z6();
        FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
        FoldRealizationReport rep = verify_fold_realization(fm);
        INFO(rep.str());
        REQUIRE(rep.ok());
        REQUIRE(rep.equivariant);
        REQUIRE(rep.dim_h == 8);
        REQUIRE(rep.dim_center == 0);
        REQUIRE(rep.dim_annihilator == 2);
        REQUIRE(rep.dim_annihilator_fixed == 2);
        REQUIRE(rep.dim_ann_in_complement == 0);
    }
    {
        FixtureCase fx = fixture_double_a5();
        FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
        FoldRealizationReport rep = verify_fold_realization(fm);
        INFO(rep.str());
        REQUIRE(rep.ok());
        REQUIRE(rep.dim_h == 4);
        REQUIRE(rep.dim_annihilator == 3);
        REQUIRE(rep.dim_annihilator_fixed == 3);
    }
    for (int seed = 1; seed <= 8; ++seed) {
        INFO("fuzz seed " << seed);
        FixtureCase fx = fuzz_action(seed);
        FoldingMaps fm = make_fold_maps(fx.quiver, fx.action);
        FoldRealizationReport rep = verify_fold_realization(fm);
        INFO(rep.str());
        REQUIRE(rep.ok());
    }
}
