#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "quiverfold/cartan.hpp"
#include "quiverfold/fixtures.hpp"

using namespace quiverfold;

namespace {

IntMat mat(int rows, int cols, std::vector<long long> vals) {
    IntMat m(rows, cols);
    m.a = std::move(vals);
    return m;
}

// simply laced tree quiver from an undirected edge list, arrows oriented as given
Quiver tree(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::string> names;
    for (int v = 1; v <= n; ++v) names.push_back("v" + std::to_string(v));
    std::vector<std::tuple<std::string, std::string, std::string>> arrs;
    int t = 0;
    for (auto [i, j] : edges)
        arrs.push_back({"e" + std::to_string(t++), names[i - 1], names[j - 1]});
    return make_quiver(names, arrs);
}

std::vector<std::string> labels(const TypeClassification& tc) {
    std::vector<std::string> out;
    for (const auto& c : tc.components) out.push_back(c.label);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("symmetric Cartan matrix of a quiver") {
    FixtureCase f = fixture_star_z6();
    IntMat a = cartan_of_quiver(f.quiver);
    REQUIRE(a == mat(4, 4, {2, -1, -1, -1, -1, 2, 0, 0, -1, 0, 2, 0, -1, 0, 0, 2}));

    Quiver iso = make_quiver({"x", "y"}, {});
    REQUIRE(cartan_of_quiver(iso) == mat(2, 2, {2, 0, 0, 2}));

    Quiver lp = make_quiver({"x"}, {{"l", "x", "x"}});
    REQUIRE_THROWS_AS(cartan_of_quiver(lp), std::invalid_argument);
}

TEST_CASE("folding the star fixture") {
    FixtureCase f = fixture_star_z6();
    OrbitData od = compute_orbits(f.quiver, f.action);
    ValuedGraphData g = fold_cartan(f.quiver, od);

    REQUIRE(g.rank() == 2);
    REQUIRE(g.names == std::vector<std::string>{"1", "2"});
    REQUIRE(g.d == std::vector<long long>{1, 3});
    REQUIRE(g.b == mat(2, 2, {2, -3, -3, 6}));
    REQUIRE(g.c == mat(2, 2, {2, -3, -1, 2}));
    REQUIRE(g.edges.size() == 1);
    REQUIRE(g.edges[0].cij_abs == 3);
    REQUIRE(g.edges[0].cji_abs == 1);

    TypeClassification tc = classify(g);
    REQUIRE(tc.all_finite());
    REQUIRE(tc.components.size() == 1);
    REQUIRE(tc.components[0].label == "G2");
}

TEST_CASE("folding the doubled quiver") {
    FixtureCase f = fixture_double_a5();
    OrbitData od = compute_orbits(f.quiver, f.action);
    ValuedGraphData g = fold_cartan(f.quiver, od);

    REQUIRE(g.rank() == 3);
    REQUIRE(g.d == std::vector<long long>{4, 4, 2});
    REQUIRE(g.b == mat(3, 3, {8, -4, 0, -4, 8, -4, 0, -4, 4}));
    REQUIRE(g.c == mat(3, 3, {2, -1, 0, -1, 2, -1, 0, -2, 2}));

    TypeClassification tc = classify(g);
    REQUIRE(tc.all_finite());
    REQUIRE(tc.components[0].label == "B3");

    // the new quiver is a four-point star
    McKayQuiver mk = build_mckay(f.quiver, f.action);
    IntMat ahat = cartan_of_quiver(mk.quiver);
    REQUIRE(ahat == mat(4, 4, {2, -1, 0, 0, -1, 2, -1, -1, 0, -1, 2, 0, 0, -1, 0, 2}));
    TypeClassification tch = classify(ahat);
    REQUIRE(labels(tch) == std::vector<std::string>{"D4"});
}

TEST_CASE("trivial action folds to the quiver Cartan matrix") {
    Quiver q = make_quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}});
    FixtureCase f = fixture_trivial(q, "trivial-path");
    OrbitData od = compute_orbits(f.quiver, f.action);
    ValuedGraphData g = fold_cartan(f.quiver, od);
    REQUIRE(g.d == std::vector<long long>{1, 1, 1});
    REQUIRE(g.c == cartan_of_quiver(q));
    REQUIRE(g.b == g.c);
}

TEST_CASE("symmetrizer computation") {
    REQUIRE(gcm_symmetrizer(mat(2, 2, {2, -3, -1, 2})) == std::vector<long long>{1, 3});
    REQUIRE(gcm_symmetrizer(mat(2, 2, {2, -1, -1, 2})) == std::vector<long long>{1, 1});
    REQUIRE(gcm_symmetrizer(mat(3, 3, {2, -1, 0, -1, 2, -1, 0, -2, 2})) ==
            std::vector<long long>{2, 2, 1});
    // c_ij = 0 with c_ji != 0 is not a GCM shape we accept
    REQUIRE_THROWS_AS(gcm_symmetrizer(mat(3, 3, {2, -1, 0, 0, 2, -1, -1, 0, 2})),
                      std::invalid_argument);
}

TEST_CASE("classification of literal matrices") {
    TypeClassification a1 = classify(mat(1, 1, {2}));
    REQUIRE(a1.all_finite());
    REQUIRE(a1.components[0].label == "A1");

    TypeClassification kron = classify(mat(2, 2, {2, -2, -2, 2}));
    REQUIRE(kron.overall() == TypeClassification::Kind::affine);
    REQUIRE(kron.has_affine());
    REQUIRE(!kron.all_finite());

    TypeClassification indef = classify(mat(2, 2, {2, -3, -3, 2}));
    REQUIRE(indef.overall() == TypeClassification::Kind::indefinite);

    // one double edge at the end distinguishes the two families
    TypeClassification b4 = classify(mat(4, 4, {2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2, -1, 0, 0, -2, 2}));
    REQUIRE(b4.components[0].label == "B4");
    TypeClassification c4 = classify(mat(4, 4, {2, -1, 0, 0, -1, 2, -1, 0, 0, -1, 2, -2, 0, 0, -1, 2}));
    REQUIRE(c4.components[0].label == "C4");
    TypeClassification f4 = classify(mat(4, 4, {2, -1, 0, 0, -1, 2, -1, 0, 0, -2, 2, -1, 0, 0, -1, 2}));
    REQUIRE(f4.components[0].label == "F4");
    TypeClassification b2 = classify(mat(2, 2, {2, -2, -1, 2}));
    REQUIRE(b2.components[0].label == "B2");
}

TEST_CASE("classification of simply laced trees") {
    REQUIRE(labels(classify(cartan_of_quiver(
                tree(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}})))) == std::vector<std::string>{"A5"});
    REQUIRE(labels(classify(cartan_of_quiver(
                tree(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 6}})))) ==
            std::vector<std::string>{"D6"});
    REQUIRE(labels(classify(cartan_of_quiver(
                tree(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 6}})))) ==
            std::vector<std::string>{"E6"});
    REQUIRE(labels(classify(cartan_of_quiver(
                tree(7, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}})))) ==
            std::vector<std::string>{"E7"});
    REQUIRE(labels(classify(cartan_of_quiver(
                tree(8, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {3, 8}})))) ==
            std::vector<std::string>{"E8"});

    // four legs at one node is the affine D4 diagram
    TypeClassification aff = classify(cartan_of_quiver(
        tree(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}})));
    REQUIRE(aff.overall() == TypeClassification::Kind::affine);

    // a cycle is the affine A series
    Quiver cyc = make_quiver({"1", "2", "3"},
                             {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}});
    REQUIRE(classify(cartan_of_quiver(cyc)).overall() == TypeClassification::Kind::affine);
}

TEST_CASE("classification is invariant under simultaneous permutation") {
    // block sum of G2, B3 and A2
    IntMat c = mat(7, 7, {2, -3, 0, 0, 0, 0, 0,
                          -1, 2, 0, 0, 0, 0, 0,
                          0, 0, 2, -1, 0, 0, 0,
                          0, 0, -1, 2, -1, 0, 0,
                          0, 0, 0, -2, 2, 0, 0,
                          0, 0, 0, 0, 0, 2, -1,
                          0, 0, 0, 0, 0, -1, 2});
    std::vector<std::string> want = {"A2", "B3", "G2"};
    REQUIRE(labels(classify(c)) == want);

    std::mt19937_64 rng(31);
    std::vector<int> perm = {0, 1, 2, 3, 4, 5, 6};
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        IntMat p(7, 7);
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) p.at(i, j) = c.at(perm[i], perm[j]);
        REQUIRE(labels(classify(p)) == want);
    }
}

TEST_CASE("fold families with one double edge") {
    for (int n = 1; n <= 3; ++n) {
        FixtureCase f = fixture_path_fold(n);
        OrbitData od = compute_orbits(f.quiver, f.action);
        ValuedGraphData g = fold_cartan(f.quiver, od);
        REQUIRE(g.rank() == n + 1);
        TypeClassification tc = classify(g);
        REQUIRE(tc.all_finite());
        REQUIRE(tc.components[0].label == "B" + std::to_string(n + 1));
    }
    {
        FixtureCase f = fixture_path_fold(2);
        ValuedGraphData g = fold_cartan(f.quiver, compute_orbits(f.quiver, f.action));
        REQUIRE(g.c == mat(3, 3, {2, -1, 0, -1, 2, -1, 0, -2, 2}));
        REQUIRE(g.d == std::vector<long long>{2, 2, 1});
    }
    for (int n = 4; n <= 6; ++n) {
        FixtureCase f = fixture_fork_fold(n);
        OrbitData od = compute_orbits(f.quiver, f.action);
        ValuedGraphData g = fold_cartan(f.quiver, od);
        REQUIRE(g.rank() == n - 1);
        TypeClassification tc = classify(g);
        REQUIRE(tc.all_finite());
        REQUIRE(tc.components[0].label == "C" + std::to_string(n - 1));
    }
    {
        FixtureCase f = fixture_cycle_fold();
        ValuedGraphData g = fold_cartan(f.quiver, compute_orbits(f.quiver, f.action));
        REQUIRE(g.c == mat(2, 2, {2, -2, -2, 2}));
        REQUIRE(classify(g).overall() == TypeClassification::Kind::affine);
    }
}

TEST_CASE("duality between the fold and the folded construction") {
    {
        FixtureCase f = fixture_star_z6();
        DualityReport dr = dual_check(f.quiver, f.action);
        INFO(dr.str());
        REQUIRE(dr.ok());
        REQUIRE(dr.gamma_hat.d == std::vector<long long>{6, 2});
        REQUIRE(dr.gamma_hat.b == mat(2, 2, {12, -6, -6, 4}));
        REQUIRE(dr.gamma_hat.c == mat(2, 2, {2, -1, -3, 2}));
    }
    {
        FixtureCase f = fixture_double_a5();
        DualityReport dr = dual_check(f.quiver, f.action);
        INFO(dr.str());
        REQUIRE(dr.ok());
        REQUIRE(dr.gamma_hat.d == std::vector<long long>{1, 1, 2});
        REQUIRE(dr.gamma_hat.b == mat(3, 3, {2, -1, 0, -1, 2, -2, 0, -2, 4}));
        REQUIRE(dr.gamma_hat.c == mat(3, 3, {2, -1, 0, -1, 2, -2, 0, -1, 2}));
    }
    auto cases = standard_fixtures();
    for (unsigned long long seed = 1; seed <= 30; ++seed) cases.push_back(fuzz_action(seed));
    for (const FixtureCase& f : cases) {
        INFO(f.name);
        DualityReport dr = dual_check(f.quiver, f.action);
        INFO(dr.str());
        REQUIRE(dr.ok());
    }
}

TEST_CASE("row sums of the new quiver reproduce the fold") {
    auto cases = standard_fixtures();
    for (unsigned long long seed = 1; seed <= 30; ++seed) cases.push_back(fuzz_action(seed));
    for (const FixtureCase& f : cases) {
        INFO(f.name);
        McKayQuiver mk = build_mckay(f.quiver, f.action);
        REQUIRE(bridge_identity_holds(f.quiver, mk));
    }
}

TEST_CASE("fold invariants hold on fuzzed actions") {
    auto cases = standard_fixtures();
    for (unsigned long long seed = 1; seed <= 60; ++seed) cases.push_back(fuzz_action(seed));
    for (const FixtureCase& f : cases) {
        INFO(f.name);
        OrbitData od = compute_orbits(f.quiver, f.action);
        ValuedGraphData g = fold_cartan(f.quiver, od);
        IntMat a = cartan_of_quiver(f.quiver);
        int n = g.rank();

        for (int i = 0; i < n; ++i) {
            REQUIRE(g.b.at(i, i) == 2 * g.d[i]);
            REQUIRE(g.d[i] * static_cast<long long>(od.stabilizer[i].order()) ==
                    f.action.group.order());
            for (int j = 0; j < n; ++j) {
                REQUIRE(g.b.at(i, j) == g.b.at(j, i));
                if (i != j) REQUIRE(g.b.at(i, j) <= 0);
                REQUIRE(g.c.at(i, j) * g.d[i] == g.b.at(i, j));
            }
        }

        // the row sum toward another orbit is the same from every orbit member
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                for (int u : od.vertex_orbits[i]) {
                    long long s = 0;
                    for (int v : od.vertex_orbits[j]) s += a.at(u, v);
                    REQUIRE(s == g.c.at(i, j));
                }
            }

        // orbit sizes symmetrize the folded GCM
        std::vector<long long> sym = gcm_symmetrizer(g.c);
        auto comps = classify(g.c);
        for (const auto& comp : comps.components)
            for (int v : comp.vertices)
                REQUIRE(g.d[v] * sym[comp.vertices[0]] == sym[v] * g.d[comp.vertices[0]]);
    }
}
