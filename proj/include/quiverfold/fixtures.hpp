#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "action.hpp"
#include "quiver.hpp"

namespace quiverfold {

struct FixtureCase {
    std::string name;
    Quiver quiver;
    MonomialAction action;
};

// Three-pointed star with a Z/6 symmetry rotating the rays and negating:
// g(alpha) = -beta, g(beta) = -gamma, g(gamma) = -alpha.
inline FixtureCase fixture_star_z6() {
    FixtureCase f;
    f.name = "star-z6";
    f.quiver = make_quiver({"1", "2", "3", "4"},
                           {{"alpha", "1", "2"}, {"beta", "1", "3"}, {"gamma", "1", "4"}});
    AbelianGroup g({6});
    // vertices: 1 fixed, 2 -> 3 -> 4 -> 2
    std::vector<int> vperm = {0, 2, 3, 1};
    // arrows at level 6: scalar -1 = zeta_6^3
    std::vector<std::pair<int, long long>> aperm = {{1, 3}, {2, 3}, {0, 3}};
    f.action = make_action(f.quiver, g, 6, {vperm}, {aperm});
    return f;
}

// Two copies of a five-vertex quiver 1 <- 2 <- 3 -> 4 -> 5, with
// a: the intra-copy flip (1<->5, 2<->4) and b: the copy swap.
inline FixtureCase fixture_double_a5() {
    FixtureCase f;
    f.name = "double-a5";
    std::vector<std::string> verts;
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    for (int copy = 0; copy < 2; ++copy) {
        std::string s = copy ? "'" : "";
        for (int v = 1; v <= 5; ++v) verts.push_back(std::to_string(v) + s);
        arrows.push_back({"a1" + s, "2" + s, "1" + s});
        arrows.push_back({"a2" + s, "3" + s, "2" + s});
        arrows.push_back({"a3" + s, "3" + s, "4" + s});
        arrows.push_back({"a4" + s, "4" + s, "5" + s});
    }
    f.quiver = make_quiver(verts, arrows);
    AbelianGroup g({2, 2});
    // generator a: flip within each copy; generator b: swap the copies
    std::vector<int> va(10), vb(10);
    for (int copy = 0; copy < 2; ++copy)
        for (int v = 0; v < 5; ++v) {
            va[copy * 5 + v] = copy * 5 + (4 - v);
            vb[copy * 5 + v] = (1 - copy) * 5 + v;
        }
    std::vector<std::pair<int, long long>> aa(8), ab(8);
    for (int copy = 0; copy < 2; ++copy)
        for (int k = 0; k < 4; ++k) {
            aa[copy * 4 + k] = {copy * 4 + (3 - k), 0};
            ab[copy * 4 + k] = {(1 - copy) * 4 + k, 0};
        }
    f.action = make_action(f.quiver, g, 2, {va, vb}, {aa, ab});
    return f;
}

// Path quiver on 2n+1 vertices oriented toward the middle, with the
// end-to-end flip. The middle vertex is fixed; its two incoming edges swap.
inline FixtureCase fixture_path_fold(int n) {
    if (n < 1) throw std::invalid_argument("fixture_path_fold: n >= 1");
    FixtureCase f;
    f.name = "path" + std::to_string(2 * n + 1) + "-z2";
    int m = 2 * n + 1;
    std::vector<std::string> verts;
    for (int v = 1; v <= m; ++v) verts.push_back(std::to_string(v));
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    for (int v = 1; v <= n; ++v)
        arrows.push_back({"u" + std::to_string(v), std::to_string(v), std::to_string(v + 1)});
    for (int v = m; v >= n + 2; --v)
        arrows.push_back({"w" + std::to_string(v), std::to_string(v), std::to_string(v - 1)});
    f.quiver = make_quiver(verts, arrows);
    AbelianGroup g({2});
    std::vector<int> vperm(m);
    for (int v = 0; v < m; ++v) vperm[v] = m - 1 - v;
    // u_v: v -> v+1 maps to the arrow (m+1-v) -> (m-v), which is w_{m+1-v}
    std::vector<std::pair<int, long long>> aperm(2 * n);
    for (int v = 1; v <= n; ++v) {
        int u_id = v - 1;                 // u_v
        int w_id = n + (m - (m + 1 - v)); // w_{m+1-v} stored at index n + (m - that)
        aperm[u_id] = {w_id, 0};
        aperm[w_id] = {u_id, 0};
    }
    f.action = make_action(f.quiver, g, 2, {vperm}, {aperm});
    return f;
}

// Fork quiver: spine 1 -> 2 -> ... -> n-2 plus two tip arrows out of the
// fork vertex; the flip swaps the tips and fixes the spine.
inline FixtureCase fixture_fork_fold(int n) {
    if (n < 3) throw std::invalid_argument("fixture_fork_fold: n >= 3");
    FixtureCase f;
    f.name = "fork" + std::to_string(n) + "-z2";
    std::vector<std::string> verts;
    for (int v = 1; v <= n; ++v) verts.push_back(std::to_string(v));
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    for (int v = 1; v <= n - 3; ++v)
        arrows.push_back({"s" + std::to_string(v), std::to_string(v), std::to_string(v + 1)});
    arrows.push_back({"t1", std::to_string(n - 2), std::to_string(n - 1)});
    arrows.push_back({"t2", std::to_string(n - 2), std::to_string(n)});
    f.quiver = make_quiver(verts, arrows);
    AbelianGroup g({2});
    std::vector<int> vperm(n);
    for (int v = 0; v < n - 2; ++v) vperm[v] = v;
    vperm[n - 2] = n - 1;
    vperm[n - 1] = n - 2;
    std::vector<std::pair<int, long long>> aperm(n - 1);
    for (int k = 0; k < n - 3; ++k) aperm[k] = {k, 0};
    aperm[n - 3] = {n - 2, 0};  // t1 <-> t2
    aperm[n - 2] = {n - 3, 0};
    f.action = make_action(f.quiver, g, 2, {vperm}, {aperm});
    return f;
}

// Oriented four-cycle folded by the half-turn; the quotient data is the
// affine Kronecker valued graph.
inline FixtureCase fixture_cycle_fold() {
    FixtureCase f;
    f.name = "cycle4-z2";
    f.quiver = make_quiver({"1", "2", "3", "4"},
                           {{"p", "1", "2"}, {"q", "1", "4"}, {"r", "3", "2"}, {"s", "3", "4"}});
    AbelianGroup g({2});
    std::vector<int> vperm = {2, 3, 0, 1};
    std::vector<std::pair<int, long long>> aperm = {{3, 0}, {2, 0}, {1, 0}, {0, 0}};
    f.action = make_action(f.quiver, g, 2, {vperm}, {aperm});
    return f;
}

// Trivial-group wrapper around any quiver.
inline FixtureCase fixture_trivial(const Quiver& q, const std::string& name) {
    FixtureCase f;
    f.name = name;
    f.quiver = q;
    AbelianGroup g(std::vector<long long>{});
    f.action = make_action(q, g, 1, {}, {});
    return f;
}

inline std::vector<FixtureCase> standard_fixtures() {
    return {fixture_star_z6(), fixture_double_a5(), fixture_path_fold(2), fixture_fork_fold(4),
            fixture_cycle_fold()};
}

// Random valid admissible action, built from induced G-sets so validity
// holds by construction: vertices of an orbit are cosets of a stabilizer,
// arrows of an orbit are indexed by cosets of a pair stabilizer carrying a
// character.
inline FixtureCase fuzz_action(unsigned long long seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&rng](long long lo, long long hi) {
        return static_cast<long long>(lo + rng() % static_cast<unsigned long long>(hi - lo + 1));
    };

    // group of order <= 12
    std::vector<long long> orders;
    {
        long long total = 1;
        int nf = static_cast<int>(pick(1, 2));
        for (int t = 0; t < nf; ++t) {
            long long m = pick(2, 6);
            if (total * m > 12) break;
            orders.push_back(m);
            total *= m;
        }
        if (orders.empty()) orders.push_back(pick(2, 6));
    }
    AbelianGroup g(orders);
    std::vector<GroupElt> elements = g.all_elements();

    auto random_subgroup = [&]() {
        int k = static_cast<int>(pick(0, 1));
        std::vector<GroupElt> gens;
        for (int t = 0; t < k; ++t) gens.push_back(elements[pick(0, elements.size() - 1)]);
        return make_subgroup(g, gens);
    };

    struct OrbitSpec {
        Subgroup stab;
        std::vector<GroupElt> coset_reps;  // canonical transversal
        int first_vertex;
    };

    auto transversal = [&](const Subgroup& h) {
        std::vector<GroupElt> reps;
        std::vector<char> seen(elements.size(), 0);
        auto index_of = [&](const GroupElt& x) {
            for (size_t t = 0; t < elements.size(); ++t)
                if (elements[t] == x) return t;
            throw std::logic_error("fuzz: element not found");
        };
        for (size_t t = 0; t < elements.size(); ++t) {
            if (seen[t]) continue;
            reps.push_back(elements[t]);
            for (const GroupElt& s : h.all_elements()) seen[index_of(g.add(elements[t], s))] = 1;
        }
        return reps;
    };

    // choose orbits until the vertex budget (8) is hit
    std::vector<OrbitSpec> orbits;
    int total_vertices = 0;
    int want = static_cast<int>(pick(2, 3));
    for (int attempt = 0; attempt < 40 && static_cast<int>(orbits.size()) < want; ++attempt) {
        Subgroup h = random_subgroup();
        long long size = g.order() / h.order();
        if (total_vertices + size > 8) continue;
        OrbitSpec os;
        os.stab = h;
        os.coset_reps = transversal(h);
        os.first_vertex = total_vertices;
        total_vertices += static_cast<int>(size);
        orbits.push_back(std::move(os));
    }
    while (orbits.size() < 2) {
        Subgroup h = full_subgroup(g);  // fixed point, one vertex
        OrbitSpec os;
        os.stab = h;
        os.coset_reps = transversal(h);
        os.first_vertex = total_vertices;
        total_vertices += 1;
        orbits.push_back(std::move(os));
    }

    auto coset_index = [&](const OrbitSpec& os, const GroupElt& x) {
        for (size_t t = 0; t < os.coset_reps.size(); ++t)
            if (os.stab.contains(g.add(x, g.neg(os.coset_reps[t])))) return static_cast<int>(t);
        throw std::logic_error("fuzz: coset not found");
    };

    Quiver q;
    for (size_t o = 0; o < orbits.size(); ++o)
        for (size_t t = 0; t < orbits[o].coset_reps.size(); ++t)
            q.vertex_names.push_back("v" + std::to_string(o) + "_" + std::to_string(t));

    long long level = std::max<long long>(g.exponent(), 1);

    struct ArrowOrbitSpec {
        int src_orbit, tgt_orbit;
        Subgroup pair_stab;
        std::vector<GroupElt> coset_reps;
        SubChar chi;
        int first_arrow;
    };
    std::vector<ArrowOrbitSpec> arrow_orbits;
    int n_arrow_orbits = static_cast<int>(pick(1, 3));
    for (int t = 0; t < n_arrow_orbits; ++t) {
        int o1 = static_cast<int>(pick(0, orbits.size() - 1));
        int o2 = static_cast<int>(pick(0, orbits.size() - 1));
        if (o1 == o2) continue;  // admissibility
        ArrowOrbitSpec as;
        as.src_orbit = o1;
        as.tgt_orbit = o2;
        as.pair_stab = subgroup_intersection(orbits[o1].stab, orbits[o2].stab);
        as.coset_reps = transversal(as.pair_stab);
        auto chars = characters_of_subgroup(as.pair_stab);
        as.chi = chars[pick(0, chars.size() - 1)];
        as.first_arrow = q.num_arrows();
        for (size_t c = 0; c < as.coset_reps.size(); ++c) {
            Arrow ar;
            ar.id = q.num_arrows();
            ar.src = orbits[o1].first_vertex + coset_index(orbits[o1], as.coset_reps[c]);
            ar.tgt = orbits[o2].first_vertex + coset_index(orbits[o2], as.coset_reps[c]);
            q.arrows.push_back(ar);
            q.arrow_names.push_back("e" + std::to_string(arrow_orbits.size()) + "_" + std::to_string(c));
        }
        arrow_orbits.push_back(std::move(as));
    }
    if (arrow_orbits.empty()) {
        // guarantee at least one arrow orbit between the first two orbits
        ArrowOrbitSpec as;
        as.src_orbit = 0;
        as.tgt_orbit = 1;
        as.pair_stab = subgroup_intersection(orbits[0].stab, orbits[1].stab);
        as.coset_reps = transversal(as.pair_stab);
        as.chi = characters_of_subgroup(as.pair_stab)[0];
        as.first_arrow = 0;
        for (size_t c = 0; c < as.coset_reps.size(); ++c) {
            Arrow ar;
            ar.id = q.num_arrows();
            ar.src = orbits[0].first_vertex + coset_index(orbits[0], as.coset_reps[c]);
            ar.tgt = orbits[1].first_vertex + coset_index(orbits[1], as.coset_reps[c]);
            q.arrows.push_back(ar);
            q.arrow_names.push_back("e0_" + std::to_string(c));
        }
        arrow_orbits.push_back(std::move(as));
    }

    // generator actions
    std::vector<std::vector<int>> vperms;
    std::vector<std::vector<std::pair<int, long long>>> aperms;
    for (int gen = 0; gen < g.num_factors(); ++gen) {
        GroupElt ge = g.identity();
        ge[gen] = 1;
        std::vector<int> vp(q.num_vertices());
        for (size_t o = 0; o < orbits.size(); ++o)
            for (size_t t = 0; t < orbits[o].coset_reps.size(); ++t)
                vp[orbits[o].first_vertex + t] =
                    orbits[o].first_vertex + coset_index(orbits[o], g.add(ge, orbits[o].coset_reps[t]));
        std::vector<std::pair<int, long long>> ap(q.num_arrows());
        for (const ArrowOrbitSpec& as : arrow_orbits)
            for (size_t c = 0; c < as.coset_reps.size(); ++c) {
                GroupElt moved = g.add(ge, as.coset_reps[c]);
                int c2 = -1;
                for (size_t t = 0; t < as.coset_reps.size(); ++t)
                    if (as.pair_stab.contains(g.add(moved, g.neg(as.coset_reps[t])))) {
                        c2 = static_cast<int>(t);
                        break;
                    }
                GroupElt s = g.add(moved, g.neg(as.coset_reps[c2]));
                long long e = subchar_eval(as.pair_stab, as.chi, s, level);
                ap[as.first_arrow + c] = {as.first_arrow + c2, e};
            }
        vperms.push_back(std::move(vp));
        aperms.push_back(std::move(ap));
    }

    FixtureCase f;
    f.name = "fuzz-" + std::to_string(seed);
    f.quiver = q;
    f.action = make_action(q, g, level, vperms, aperms);
    return f;
}

}  // namespace quiverfold
