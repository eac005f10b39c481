#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "quiverfold/action.hpp"
#include "quiverfold/fixtures.hpp"

using namespace quiverfold;

TEST_CASE("star quiver with rotation action validates") {
    FixtureCase f = fixture_star_z6();
    ValidationReport rep = validate_action(f.quiver, f.action);
    INFO(rep.str());
    REQUIRE(rep.valid());
}

TEST_CASE("acting on arrows composes with scalar accumulation") {
    FixtureCase f = fixture_star_z6();
    int alpha = f.quiver.arrow_index("alpha");
    int beta = f.quiver.arrow_index("beta");

    auto r = act_arrow(f.action, GroupElt{1}, alpha);
    REQUIRE(r.first == beta);
    REQUIRE(r.second == 3);  // -beta

    auto id = act_arrow(f.action, GroupElt{0}, alpha);
    REQUIRE(id.first == alpha);
    REQUIRE(id.second == 0);

    // g^3(alpha) = -alpha: compose the table three times
    auto r3 = act_arrow(f.action, GroupElt{3}, alpha);
    REQUIRE(r3.first == alpha);
    REQUIRE(r3.second == 3);
}

TEST_CASE("act is a genuine group action on fixtures") {
    for (const FixtureCase& f : standard_fixtures()) {
        auto elems = f.action.group.all_elements();
        for (const GroupElt& g : elems)
            for (const GroupElt& h : elems)
                for (int ar = 0; ar < f.quiver.num_arrows(); ++ar) {
                    auto [b, e1] = act_arrow(f.action, h, ar);
                    auto [c, e2] = act_arrow(f.action, g, b);
                    auto [d, e3] = act_arrow(f.action, f.action.group.add(g, h), ar);
                    REQUIRE(c == d);
                    REQUIRE(mod_nonneg(e1 + e2, f.action.level) == e3);
                    REQUIRE(act_vertex(f.action, g, act_vertex(f.action, h, f.quiver.arrows[ar].src)) ==
                            act_vertex(f.action, f.action.group.add(g, h), f.quiver.arrows[ar].src));
                }
    }
}

TEST_CASE("orbit data of the star fixture") {
    FixtureCase f = fixture_star_z6();
    OrbitData od = compute_orbits(f.quiver, f.action);

    REQUIRE(od.reps == std::vector<int>{0, 1});  // vertices "1", "2"
    REQUIRE(od.vertex_orbits[0] == std::vector<int>{0});
    REQUIRE(od.vertex_orbits[1] == std::vector<int>{1, 2, 3});
    REQUIRE(od.stabilizer[0].order() == 6);
    REQUIRE(od.stabilizer[1].order() == 2);
    REQUIRE(od.stabilizer[1].contains(GroupElt{3}));  // <g^3>

    // transporters
    REQUIRE(od.kappa[1] == GroupElt{0});
    REQUIRE(od.kappa[2] == GroupElt{1});
    REQUIRE(od.kappa[3] == GroupElt{2});

    // one arrow orbit, representative over the pair representative (1,2)
    REQUIRE(od.arrow_orbits.size() == 1);
    REQUIRE(od.arrow_orbits[0] == std::vector<int>{0, 1, 2});
    REQUIRE(od.arrow_orbit_rep[0] == 0);
    auto pr = od.pair_reps.at({0, 1});
    REQUIRE(pr == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("orbit data of the doubled quiver") {
    FixtureCase f = fixture_double_a5();
    OrbitData od = compute_orbits(f.quiver, f.action);
    REQUIRE(od.reps.size() == 3);
    REQUIRE(f.quiver.vertex_names[od.reps[0]] == "1");
    REQUIRE(f.quiver.vertex_names[od.reps[1]] == "2");
    REQUIRE(f.quiver.vertex_names[od.reps[2]] == "3");
    REQUIRE(od.vertex_orbits[0].size() == 4);
    REQUIRE(od.vertex_orbits[1].size() == 4);
    REQUIRE(od.vertex_orbits[2].size() == 2);
    REQUIRE(od.stabilizer[0].order() == 1);
    REQUIRE(od.stabilizer[1].order() == 1);
    REQUIRE(od.stabilizer[2].order() == 2);
    REQUIRE(od.stabilizer[2].contains(GroupElt{1, 0}));  // the intra-copy flip
}

TEST_CASE("trivial group gives singleton orbits") {
    Quiver q = make_quiver({"x", "y"}, {{"e", "x", "y"}});
    FixtureCase f = fixture_trivial(q, "trivial");
    ValidationReport rep = validate_action(f.quiver, f.action);
    REQUIRE(rep.valid());
    OrbitData od = compute_orbits(f.quiver, f.action);
    REQUIRE(od.reps.size() == 2);
    for (const auto& orb : od.vertex_orbits) REQUIRE(orb.size() == 1);
    for (const auto& st : od.stabilizer) REQUIRE(st.order() == 1);
}

TEST_CASE("admissibility violation is reported with a witness") {
    // extend the star rotation with a 3-cycle of arrows inside the moving orbit
    Quiver q = make_quiver({"1", "2", "3", "4"},
                           {{"alpha", "1", "2"},
                            {"beta", "1", "3"},
                            {"gamma", "1", "4"},
                            {"d", "2", "3"},
                            {"e", "3", "4"},
                            {"f", "4", "2"}});
    AbelianGroup g({6});
    std::vector<int> vperm = {0, 2, 3, 1};
    std::vector<std::pair<int, long long>> aperm = {{1, 3}, {2, 3}, {0, 3}, {4, 0}, {5, 0}, {3, 0}};
    MonomialAction a = make_action(q, g, 6, {vperm}, {aperm});
    ValidationReport rep = validate_action(q, a);
    REQUIRE(!rep.valid());
    bool admissibility_failed = false;
    for (const auto& c : rep.checks) {
        if (c.name == "admissibility" && !c.ok) {
            admissibility_failed = true;
            REQUIRE(c.witness.find("same orbit") != std::string::npos);
        } else {
            REQUIRE(c.ok);  // everything else about this action is fine
        }
    }
    REQUIRE(admissibility_failed);
    REQUIRE_THROWS_AS(compute_orbits(q, a), std::invalid_argument);
}

TEST_CASE("broken generator order is reported") {
    // at level 12, give alpha the scalar zeta_12^3 = i; then g^6 = -1 on alpha
    Quiver q = make_quiver({"1", "2", "3", "4"},
                           {{"alpha", "1", "2"}, {"beta", "1", "3"}, {"gamma", "1", "4"}});
    AbelianGroup g({6});
    std::vector<int> vperm = {0, 2, 3, 1};
    std::vector<std::pair<int, long long>> aperm = {{1, 3}, {2, 6}, {0, 6}};
    MonomialAction a = make_action(q, g, 12, {vperm}, {aperm});
    ValidationReport rep = validate_action(q, a);
    REQUIRE(!rep.valid());
    for (const auto& c : rep.checks)
        if (c.name == "generator-orders") REQUIRE(!c.ok);
}

TEST_CASE("non-diagonal stabilizer action is rejected with advice") {
    // two parallel arrows swapped by an action fixing both endpoints
    Quiver q = make_quiver({"x", "y"}, {{"a", "x", "y"}, {"b", "x", "y"}});
    AbelianGroup g({2});
    MonomialAction a = make_action(q, g, 2, {{0, 1}}, {{{1, 0}, {0, 0}}});
    ValidationReport rep = validate_action(q, a);
    REQUIRE(!rep.valid());
    bool found = false;
    for (const auto& c : rep.checks)
        if (c.name == "stabilizer-diagonality" && !c.ok) {
            found = true;
            REQUIRE(c.witness.find("diagonalize") != std::string::npos);
        }
    REQUIRE(found);
}

TEST_CASE("representative sets stay connected per folded component") {
    auto cases = standard_fixtures();
    for (unsigned long long seed = 1; seed <= 40; ++seed) cases.push_back(fuzz_action(seed));
    for (const FixtureCase& f : cases) {
        INFO(f.name);
        OrbitData od = compute_orbits(f.quiver, f.action);

        // full subquiver of Q on the representatives
        Quiver sub;
        std::vector<int> pos(f.quiver.num_vertices(), -1);
        for (size_t t = 0; t < od.reps.size(); ++t) {
            pos[od.reps[t]] = static_cast<int>(t);
            sub.vertex_names.push_back(f.quiver.vertex_names[od.reps[t]]);
        }
        for (const Arrow& ar : f.quiver.arrows)
            if (pos[ar.src] >= 0 && pos[ar.tgt] >= 0) {
                Arrow b{sub.num_arrows(), pos[ar.src], pos[ar.tgt]};
                sub.arrows.push_back(b);
                sub.arrow_names.push_back(f.quiver.arrow_names[ar.id]);
            }

        // quotient graph on orbits
        Quiver quot;
        for (size_t t = 0; t < od.reps.size(); ++t) quot.vertex_names.push_back("o" + std::to_string(t));
        for (const Arrow& ar : f.quiver.arrows) {
            Arrow b{quot.num_arrows(), od.orbit_of_vertex[ar.src], od.orbit_of_vertex[ar.tgt]};
            quot.arrows.push_back(b);
            quot.arrow_names.push_back("q" + std::to_string(b.id));
        }

        auto sub_comp = sub.components();
        auto quot_comp = quot.components();
        REQUIRE(sub_comp.size() == quot_comp.size());
        // each folded component's representative set is connected in Q:
        // the subquiver component containing those reps covers them all
        for (const auto& qc : quot_comp) {
            std::set<int> want(qc.begin(), qc.end());
            bool covered = false;
            for (const auto& sc : sub_comp) {
                std::set<int> got(sc.begin(), sc.end());
                if (got == want) covered = true;
            }
            REQUIRE(covered);
        }
    }
}

TEST_CASE("fuzzed actions validate and satisfy orbit laws") {
    for (unsigned long long seed = 1; seed <= 100; ++seed) {
        FixtureCase f = fuzz_action(seed);
        INFO(f.name);
        ValidationReport rep = validate_action(f.quiver, f.action);
        INFO(rep.str());
        REQUIRE(rep.valid());

        OrbitData od = compute_orbits(f.quiver, f.action);
        long long total = 0;
        for (size_t o = 0; o < od.reps.size(); ++o) {
            long long sz = static_cast<long long>(od.vertex_orbits[o].size());
            total += sz;
            REQUIRE(f.action.group.order() % sz == 0);
            REQUIRE(sz * od.stabilizer[o].order() == f.action.group.order());
        }
        REQUIRE(total == f.quiver.num_vertices());

        // transporters land on representatives
        for (int v = 0; v < f.quiver.num_vertices(); ++v) {
            int rep_v = od.reps[od.orbit_of_vertex[v]];
            REQUIRE(act_vertex(f.action, od.kappa[v], rep_v) == v);
            REQUIRE(act_vertex(f.action, f.action.group.neg(od.kappa[v]), v) == rep_v);
        }

        // arrow orbits partition the arrows
        long long atotal = 0;
        for (const auto& orb : od.arrow_orbits) atotal += static_cast<long long>(orb.size());
        REQUIRE(atotal == f.quiver.num_arrows());
    }
}
