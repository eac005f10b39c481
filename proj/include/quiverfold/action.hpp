#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "quiver.hpp"

namespace quiverfold {

// Monomial action of an abelian group on a quiver: each generator permutes
// vertices and sends each arrow to zeta_L^k times a single arrow.
struct MonomialAction {
    AbelianGroup group;
    long long level = 1;  // scalars are powers of zeta_level
    // One entry per group factor (generator):
    std::vector<std::vector<int>> vertex_perm;                        // [gen][vertex] -> vertex
    std::vector<std::vector<std::pair<int, long long>>> arrow_perm;   // [gen][arrow] -> (arrow, exponent)
};

inline MonomialAction make_action(
    const Quiver& q, const AbelianGroup& g, long long level,
    const std::vector<std::vector<int>>& vperm,
    const std::vector<std::vector<std::pair<int, long long>>>& aperm) {
    if (level < 1) throw std::invalid_argument("action level must be positive");
    if (static_cast<int>(vperm.size()) != g.num_factors() ||
        static_cast<int>(aperm.size()) != g.num_factors())
        throw std::invalid_argument("one vertex/arrow permutation required per group generator");
    for (const auto& p : vperm)
        if (static_cast<int>(p.size()) != q.num_vertices())
            throw std::invalid_argument("vertex permutation has wrong size");
    for (const auto& p : aperm)
        if (static_cast<int>(p.size()) != q.num_arrows())
            throw std::invalid_argument("arrow permutation has wrong size");
    MonomialAction a;
    a.group = g;
    a.level = level;
    a.vertex_perm = vperm;
    a.arrow_perm = aperm;
    for (auto& p : a.arrow_perm)
        for (auto& [img, e] : p) e = mod_nonneg(e, level);
    return a;
}

inline int act_vertex(const MonomialAction& a, const GroupElt& g, int v) {
    GroupElt h = a.group.reduce(g);
    for (int j = 0; j < a.group.num_factors(); ++j)
        for (long long t = 0; t < h[j]; ++t) v = a.vertex_perm[j][v];
    return v;
}

// Returns (image arrow, scalar exponent k): g(alpha) = zeta_L^k * image.
inline std::pair<int, long long> act_arrow(const MonomialAction& a, const GroupElt& g, int arrow) {
    GroupElt h = a.group.reduce(g);
    long long e = 0;
    for (int j = 0; j < a.group.num_factors(); ++j)
        for (long long t = 0; t < h[j]; ++t) {
            auto [img, k] = a.arrow_perm[j][arrow];
            arrow = img;
            e = mod_nonneg(e + k, a.level);
        }
    return {arrow, e};
}

struct CheckResult {
    std::string name;
    bool ok;
    std::string witness;  // empty when ok
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool valid() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    std::string str() const {
        std::ostringstream os;
        for (const auto& c : checks) {
            os << (c.ok ? "  [ok]   " : "  [FAIL] ") << c.name;
            if (!c.ok) os << ": " << c.witness;
            os << "\n";
        }
        return os.str();
    }
};

namespace detail {

inline std::vector<std::vector<int>> vertex_orbit_partition(const Quiver& q, const MonomialAction& a) {
    int n = q.num_vertices();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> orbits;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{s}, members;
        comp[s] = static_cast<int>(orbits.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int j = 0; j < a.group.num_factors(); ++j) {
                int w = a.vertex_perm[j][v];
                if (comp[w] == -1) {
                    comp[w] = comp[s];
                    stack.push_back(w);
                }
            }
        }
        std::sort(members.begin(), members.end());
        orbits.push_back(members);
    }
    return orbits;
}

}  // namespace detail

inline ValidationReport validate_action(const Quiver& q, const MonomialAction& a) {
    ValidationReport rep;
    auto add = [&rep](const std::string& name, bool ok, const std::string& witness) {
        rep.checks.push_back({name, ok, ok ? "" : witness});
    };

    {
        bool ok = !q.has_loop();
        std::string w;
        if (!ok)
            for (const Arrow& ar : q.arrows)
                if (ar.src == ar.tgt) {
                    w = "arrow " + q.arrow_names[ar.id] + " is a loop at " + q.vertex_names[ar.src];
                    break;
                }
        add("no-loops", ok, w);
    }

    bool perms_ok = true;
    {
        std::string w;
        for (int j = 0; j < a.group.num_factors() && perms_ok; ++j) {
            std::set<int> vimg(a.vertex_perm[j].begin(), a.vertex_perm[j].end());
            if (static_cast<int>(vimg.size()) != q.num_vertices()) {
                perms_ok = false;
                w = "generator " + std::to_string(j) + " vertex map is not a bijection";
            }
            std::set<int> aimg;
            for (const auto& [img, e] : a.arrow_perm[j]) aimg.insert(img);
            if (perms_ok && static_cast<int>(aimg.size()) != q.num_arrows()) {
                perms_ok = false;
                w = "generator " + std::to_string(j) + " arrow map is not a bijection";
            }
        }
        add("bijectivity", perms_ok, w);
    }
    if (!perms_ok) return rep;  // remaining checks need well-defined permutations

    {
        bool ok = true;
        std::string w;
        for (int j = 0; j < a.group.num_factors() && ok; ++j)
            for (const Arrow& ar : q.arrows) {
                const Arrow& im = q.arrows[a.arrow_perm[j][ar.id].first];
                if (im.src != a.vertex_perm[j][ar.src] || im.tgt != a.vertex_perm[j][ar.tgt]) {
                    ok = false;
                    w = "generator " + std::to_string(j) + " sends arrow " + q.arrow_names[ar.id] +
                        " to " + q.arrow_names[im.id] + " whose endpoints do not match the vertex images";
                    break;
                }
            }
        add("endpoint-compatibility", ok, w);
    }

    {
        bool ok = true;
        std::string w;
        for (int j = 0; j < a.group.num_factors() && ok; ++j) {
            // compose the generator orders[j] times without reduction
            for (int v = 0; v < q.num_vertices() && ok; ++v) {
                int cur = v;
                for (long long t = 0; t < a.group.orders[j]; ++t) cur = a.vertex_perm[j][cur];
                if (cur != v) {
                    ok = false;
                    w = "generator " + std::to_string(j) + " to the power " +
                        std::to_string(a.group.orders[j]) + " moves vertex " + q.vertex_names[v];
                }
            }
            for (int ar = 0; ar < q.num_arrows() && ok; ++ar) {
                int cur = ar;
                long long e = 0;
                for (long long t = 0; t < a.group.orders[j]; ++t) {
                    auto [img, k] = a.arrow_perm[j][cur];
                    cur = img;
                    e += k;
                }
                if (cur != ar || mod_nonneg(e, a.level) != 0) {
                    ok = false;
                    w = "generator " + std::to_string(j) + " to the power " +
                        std::to_string(a.group.orders[j]) + " acts on arrow " + q.arrow_names[ar] +
                        " as zeta^" + std::to_string(mod_nonneg(e, a.level)) +
                        (cur != ar ? " times a different arrow" : " times itself");
                }
            }
        }
        add("generator-orders", ok, w);
    }

    {
        bool ok = true;
        std::string w;
        for (int i = 0; i < a.group.num_factors() && ok; ++i)
            for (int j = i + 1; j < a.group.num_factors() && ok; ++j) {
                for (int v = 0; v < q.num_vertices() && ok; ++v)
                    if (a.vertex_perm[i][a.vertex_perm[j][v]] != a.vertex_perm[j][a.vertex_perm[i][v]]) {
                        ok = false;
                        w = "generators " + std::to_string(i) + "," + std::to_string(j) +
                            " do not commute on vertex " + q.vertex_names[v];
                    }
                for (int ar = 0; ar < q.num_arrows() && ok; ++ar) {
                    auto [b1, e1] = a.arrow_perm[j][ar];
                    auto [c1, f1] = a.arrow_perm[i][b1];
                    auto [b2, e2] = a.arrow_perm[i][ar];
                    auto [c2, f2] = a.arrow_perm[j][b2];
                    if (c1 != c2 || mod_nonneg(e1 + f1 - e2 - f2, a.level) != 0) {
                        ok = false;
                        w = "generators " + std::to_string(i) + "," + std::to_string(j) +
                            " do not commute on arrow " + q.arrow_names[ar];
                    }
                }
            }
        add("generator-commutation", ok, w);
    }

    auto orbits = detail::vertex_orbit_partition(q, a);
    {
        std::vector<int> orb_of(q.num_vertices(), -1);
        for (size_t o = 0; o < orbits.size(); ++o)
            for (int v : orbits[o]) orb_of[v] = static_cast<int>(o);
        bool ok = true;
        std::string w;
        for (const Arrow& ar : q.arrows)
            if (orb_of[ar.src] == orb_of[ar.tgt]) {
                ok = false;
                w = "arrow " + q.arrow_names[ar.id] + " connects vertices " + q.vertex_names[ar.src] +
                    " and " + q.vertex_names[ar.tgt] + " of the same orbit";
                break;
            }
        add("admissibility", ok, w);
    }

    {
        // An element fixing both endpoints of an arrow must scale that arrow
        // itself; actions where it permutes parallel arrows must be given in
        // a diagonalized arrow basis.
        bool ok = true;
        std::string w;
        for (const GroupElt& g : a.group.all_elements()) {
            for (const Arrow& ar : q.arrows) {
                if (act_vertex(a, g, ar.src) != ar.src || act_vertex(a, g, ar.tgt) != ar.tgt) continue;
                auto [img, e] = act_arrow(a, g, ar.id);
                (void)e;
                if (img != ar.id) {
                    ok = false;
                    w = "element " + group_elt_to_string(g) + " fixes both endpoints of arrow " +
                        q.arrow_names[ar.id] + " but maps it to " + q.arrow_names[img] +
                        "; diagonalize the arrow basis first";
                    break;
                }
            }
            if (!ok) break;
        }
        add("stabilizer-diagonality", ok, w);
    }

    return rep;
}

// Orbit/stabilizer data with deterministic representative choices.
struct OrbitData {
    std::vector<int> reps;                        // representative vertices, BFS order
    std::vector<std::vector<int>> vertex_orbits;  // parallel to reps, each sorted
    std::vector<int> orbit_of_vertex;             // vertex -> orbit index
    std::vector<GroupElt> kappa;                  // kappa[v](rep of v's orbit) = v, lex-smallest
    std::vector<Subgroup> stabilizer;             // per orbit (abelian: constant on the orbit)
    std::vector<std::vector<int>> arrow_orbits;   // each sorted by arrow id
    std::vector<int> orbit_of_arrow;              // arrow id -> arrow orbit index
    std::vector<int> arrow_orbit_rep;             // representative arrow per arrow orbit
    // For representatives i, j: orbit representatives of the diagonal action
    // on O_i x O_j, lexicographically smallest pair first in each orbit.
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> pair_reps;

    int rep_index(int v) const { return orbit_of_vertex[v]; }
    const Subgroup& stabilizer_of_vertex(int v) const { return stabilizer[orbit_of_vertex[v]]; }
};

inline OrbitData compute_orbits(const Quiver& q, const MonomialAction& a) {
    {
        ValidationReport rep = validate_action(q, a);
        if (!rep.valid())
            throw std::invalid_argument("compute_orbits: invalid action\n" + rep.str());
    }
    OrbitData od;
    auto raw_orbits = detail::vertex_orbit_partition(q, a);
    int n = q.num_vertices();
    std::vector<int> raw_of(n, -1);
    for (size_t o = 0; o < raw_orbits.size(); ++o)
        for (int v : raw_orbits[o]) raw_of[v] = static_cast<int>(o);

    // Choose representatives: start at the smallest unvisited vertex; then
    // repeatedly pick the smallest vertex that lies in an unrepresented orbit
    // and is adjacent (in Q) to an already chosen representative. This keeps
    // the representatives of each folded component connected inside Q.
    std::vector<char> orbit_done(raw_orbits.size(), 0);
    std::vector<int> chosen;
    auto adjacency = [&](int v) {
        std::vector<int> out;
        for (const Arrow& ar : q.arrows) {
            if (ar.src == v) out.push_back(ar.tgt);
            if (ar.tgt == v) out.push_back(ar.src);
        }
        return out;
    };
    while (static_cast<int>(chosen.size()) < static_cast<int>(raw_orbits.size())) {
        int next = -1;
        for (int r : chosen)
            for (int w : adjacency(r))
                if (!orbit_done[raw_of[w]] && (next == -1 || w < next)) next = w;
        if (next == -1) {
            for (int v = 0; v < n && next == -1; ++v)
                if (!orbit_done[raw_of[v]]) next = v;
        }
        chosen.push_back(next);
        orbit_done[raw_of[next]] = 1;
    }

    od.reps = chosen;
    od.orbit_of_vertex.assign(n, -1);
    for (size_t o = 0; o < chosen.size(); ++o) {
        od.vertex_orbits.push_back(raw_orbits[raw_of[chosen[o]]]);
        for (int v : od.vertex_orbits.back()) od.orbit_of_vertex[v] = static_cast<int>(o);
    }

    std::vector<GroupElt> elements = a.group.all_elements();
    od.kappa.assign(n, GroupElt{});
    for (int v = 0; v < n; ++v) {
        int rep = od.reps[od.orbit_of_vertex[v]];
        for (const GroupElt& g : elements)
            if (act_vertex(a, g, rep) == v) {
                od.kappa[v] = g;
                break;
            }
        if (od.kappa[v].empty() && a.group.num_factors() > 0)
            throw std::logic_error("compute_orbits: no transporter found");
    }

    for (size_t o = 0; o < od.reps.size(); ++o) {
        std::vector<GroupElt> stab;
        for (const GroupElt& g : elements)
            if (act_vertex(a, g, od.reps[o]) == od.reps[o]) stab.push_back(g);
        od.stabilizer.push_back(make_subgroup(a.group, stab));
        if (od.stabilizer.back().order() * static_cast<long long>(od.vertex_orbits[o].size()) !=
            a.group.order())
            throw std::logic_error("compute_orbits: orbit-stabilizer mismatch");
    }

    // Arrow orbits.
    int m = q.num_arrows();
    od.orbit_of_arrow.assign(m, -1);
    for (int s = 0; s < m; ++s) {
        if (od.orbit_of_arrow[s] != -1) continue;
        int idx = static_cast<int>(od.arrow_orbits.size());
        std::vector<int> stack{s}, members;
        od.orbit_of_arrow[s] = idx;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (int j = 0; j < a.group.num_factors(); ++j) {
                int y = a.arrow_perm[j][x].first;
                if (od.orbit_of_arrow[y] == -1) {
                    od.orbit_of_arrow[y] = idx;
                    stack.push_back(y);
                }
            }
        }
        std::sort(members.begin(), members.end());
        od.arrow_orbits.push_back(members);
    }

    // Pair-orbit representatives over each (rep src-orbit, rep tgt-orbit).
    for (size_t oi = 0; oi < od.reps.size(); ++oi)
        for (size_t oj = 0; oj < od.reps.size(); ++oj) {
            std::vector<std::pair<int, int>> reps_ij;
            std::set<std::pair<int, int>> seen;
            for (int u : od.vertex_orbits[oi])
                for (int v : od.vertex_orbits[oj]) {
                    std::pair<int, int> p{u, v};
                    if (seen.count(p)) continue;
                    reps_ij.push_back(p);  // lexicographically smallest of its orbit: scan order
                    for (const GroupElt& g : elements)
                        seen.insert({act_vertex(a, g, u), act_vertex(a, g, v)});
                }
            od.pair_reps[{od.reps[oi], od.reps[oj]}] = reps_ij;
        }

    // Arrow-orbit representative: the unique arrow of the orbit that sits over
    // the representative pair of its endpoint pair-orbit.
    od.arrow_orbit_rep.assign(od.arrow_orbits.size(), -1);
    for (size_t ao = 0; ao < od.arrow_orbits.size(); ++ao) {
        const Arrow& first = q.arrows[od.arrow_orbits[ao][0]];
        int ri = od.reps[od.orbit_of_vertex[first.src]];
        int rj = od.reps[od.orbit_of_vertex[first.tgt]];
        const auto& fij = od.pair_reps.at({ri, rj});
        std::set<std::pair<int, int>> orbit_of_first;
        for (const GroupElt& g : elements)
            orbit_of_first.insert({act_vertex(a, g, first.src), act_vertex(a, g, first.tgt)});
        std::pair<int, int> target{-1, -1};
        for (const auto& p : fij)
            if (orbit_of_first.count(p)) {
                target = p;
                break;
            }
        int best = -1;
        for (int x : od.arrow_orbits[ao]) {
            const Arrow& ar = q.arrows[x];
            if (ar.src == target.first && ar.tgt == target.second) {
                best = x;
                break;  // ids sorted: smallest such arrow
            }
        }
        if (best == -1) throw std::logic_error("compute_orbits: arrow orbit misses its pair representative");
        od.arrow_orbit_rep[ao] = best;
    }

    return od;
}

// Stabilizer of the ordered pair (u, v) as a subgroup.
inline Subgroup pair_stabilizer(const Quiver& q, const MonomialAction& a, int u, int v) {
    (void)q;
    std::vector<GroupElt> stab;
    for (const GroupElt& g : a.group.all_elements())
        if (act_vertex(a, g, u) == u && act_vertex(a, g, v) == v) stab.push_back(g);
    return make_subgroup(a.group, stab);
}

}  // namespace quiverfold
