#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "action.hpp"
#include "skew.hpp"

namespace quiverfold {

struct McKayVertex {
    int base;        // representative vertex of Q (element of the chosen set)
    int char_index;  // index into characters_of_subgroup(stabilizer)
    SubChar chi;
};

struct McKayArrowOrigin {
    int arrow_orbit;     // index into OrbitData::arrow_orbits
    int rep_arrow;       // representative arrow of that orbit
    SkewElement basis;   // normalized idempotent sandwich spanning this arrow
};

struct McKayQuiver {
    Quiver quiver;                        // the constructed quiver
    std::vector<McKayVertex> vertices;    // parallel to quiver.vertex_names
    std::vector<McKayArrowOrigin> origin; // parallel to quiver.arrows
    MonomialAction induced;               // dual action of the same group
    long long engine_level = 1;
    OrbitData base_orbits;                // orbit data of the input (Q, action)
};

namespace detail {

// Scalar character of the pair stabilizer on an arrow it fixes:
// chi(can_gen_t) via the action exponent, converted to the subgroup basis.
inline SubChar arrow_subchar(const MonomialAction& a, const Subgroup& h, int arrow) {
    SubChar chi;
    chi.exps.resize(h.factors.size());
    for (size_t t = 0; t < h.factors.size(); ++t) {
        auto [img, k] = act_arrow(a, h.can_gens[t], arrow);
        if (img != arrow)
            throw std::logic_error("arrow_subchar: stabilizer does not fix the arrow");
        if (h.factors[t] == 1) { chi.exps[t] = 0; continue; }
        long long num = k * h.factors[t];
        if (num % a.level != 0)
            throw std::logic_error("arrow_subchar: scalar is not an f_t-th root of unity");
        chi.exps[t] = mod_nonneg(num / a.level, h.factors[t]);
    }
    return chi;
}

// Writes the restriction of the duality character chi_g to the subgroup H.
inline SubChar pairing_subchar(const AbelianGroup& g, const GroupElt& elt, const Subgroup& h) {
    long long level = std::max<long long>(g.exponent(), 1);
    SubChar r;
    r.exps.resize(h.factors.size());
    for (size_t j = 0; j < h.factors.size(); ++j) {
        if (h.factors[j] == 1) { r.exps[j] = 0; continue; }
        long long k = pairing_at_level(g, elt, h.can_gens[j], level);
        long long num = k * h.factors[j];
        if (num % level != 0)
            throw std::logic_error("pairing_subchar: value not an f_j-th root of unity");
        r.exps[j] = mod_nonneg(num / level, h.factors[j]);
    }
    return r;
}

}  // namespace detail

// Generalized McKay quiver of (Q, action). Arrows are derived twice, by
// character matching and by idempotent sandwiches in the skew group algebra,
// and the two methods must agree pointwise.
inline McKayQuiver build_mckay(const Quiver& q, const MonomialAction& a) {
    McKayQuiver mk;
    mk.base_orbits = compute_orbits(q, a);
    const OrbitData& od = mk.base_orbits;
    SkewAlgebra alg(q, a);
    mk.engine_level = alg.level();

    // Vertices: (representative, character of its stabilizer).
    std::vector<std::vector<SubChar>> chars_per_orbit;
    std::map<std::pair<int, int>, int> vertex_of;  // (orbit index, char index) -> Qhat vertex
    for (size_t o = 0; o < od.reps.size(); ++o) {
        chars_per_orbit.push_back(characters_of_subgroup(od.stabilizer[o]));
        const auto& chars = chars_per_orbit.back();
        for (size_t c = 0; c < chars.size(); ++c) {
            McKayVertex v;
            v.base = od.reps[o];
            v.char_index = static_cast<int>(c);
            v.chi = chars[c];
            vertex_of[{static_cast<int>(o), static_cast<int>(c)}] = mk.quiver.num_vertices();
            std::string name = q.vertex_names[v.base];
            if (chars.size() > 1) name = "(" + name + "," + std::to_string(c) + ")";
            mk.quiver.vertex_names.push_back(name);
            mk.vertices.push_back(v);
        }
    }

    // Idempotents per orbit, reused across arrows.
    std::vector<std::vector<SkewElement>> idem_per_orbit;
    for (size_t o = 0; o < od.reps.size(); ++o) {
        std::vector<SkewElement> idems;
        for (const SubChar& chi : chars_per_orbit[o])
            idems.push_back(alg.vertex_idempotent(od.reps[o], od.stabilizer[o], chi));
        idem_per_orbit.push_back(std::move(idems));
    }

    // Arrows per arrow orbit.
    for (size_t ao = 0; ao < od.arrow_orbits.size(); ++ao) {
        int rep_arrow = od.arrow_orbit_rep[ao];
        const Arrow& ra = q.arrows[rep_arrow];
        int oi = od.orbit_of_vertex[ra.src];
        int oj = od.orbit_of_vertex[ra.tgt];
        int j = od.reps[oj];
        Subgroup h = subgroup_intersection(od.stabilizer[oi], od.stabilizer[oj]);
        SubChar arrow_chi = detail::arrow_subchar(a, h, rep_arrow);

        // Transport the representative arrow so its target is the target
        // representative; twist by the transporter of the resulting source.
        GroupElt to_rep = a.group.neg(od.kappa[ra.tgt]);
        int moved = act_arrow(a, to_rep, rep_arrow).first;
        const Arrow& ma = q.arrows[moved];
        if (ma.tgt != j) throw std::logic_error("build_mckay: transported arrow misses the representative");
        GroupElt twist = od.kappa[ma.src];
        SkewElement middle = alg.arrow_term(moved, twist);

        long long expected = od.stabilizer[oi].order() * od.stabilizer[oj].order() / h.order();
        long long produced = 0;

        for (size_t ci = 0; ci < chars_per_orbit[oi].size(); ++ci)
            for (size_t cj = 0; cj < chars_per_orbit[oj].size(); ++cj) {
                const SubChar& rho = chars_per_orbit[oi][ci];
                const SubChar& sigma = chars_per_orbit[oj][cj];
                bool match = restrict_subchar(od.stabilizer[oi], rho, h) ==
                             subchar_mul(h, restrict_subchar(od.stabilizer[oj], sigma, h), arrow_chi);

                SkewElement sandwich =
                    alg.mul(idem_per_orbit[oj][cj], alg.mul(middle, idem_per_orbit[oi][ci]));
                bool nonzero = !sandwich.empty();
                if (match != nonzero)
                    throw std::logic_error(
                        "build_mckay: character matching and idempotent sandwich disagree at arrow " +
                        q.arrow_names[rep_arrow] + ", characters (" + std::to_string(ci) + "," +
                        std::to_string(cj) + ")");
                if (!match) continue;

                // Normalize: coefficient 1 on the defining support pair.
                SkewKey key{arrow_path(q, moved), a.group.reduce(twist)};
                auto it = sandwich.find(key);
                if (it == sandwich.end())
                    throw std::logic_error("build_mckay: sandwich misses its defining term");
                SkewElement basis = SkewAlgebra::scale(it->second.inverse(), sandwich);

                Arrow e;
                e.id = mk.quiver.num_arrows();
                e.src = vertex_of[{oi, static_cast<int>(ci)}];
                e.tgt = vertex_of[{oj, static_cast<int>(cj)}];
                mk.quiver.arrows.push_back(e);
                mk.quiver.arrow_names.push_back(q.arrow_names[rep_arrow] + "[" + std::to_string(ci) +
                                                "," + std::to_string(cj) + "]");
                mk.origin.push_back({static_cast<int>(ao), rep_arrow, basis});
                ++produced;
            }

        if (produced != expected)
            throw std::logic_error("build_mckay: arrow count per orbit is " + std::to_string(produced) +
                                   ", expected " + std::to_string(expected));
    }

    // Induced (dual) action of the same group on the new quiver.
    mk.induced.group = a.group;
    mk.induced.level = mk.engine_level;
    for (int gen = 0; gen < a.group.num_factors(); ++gen) {
        GroupElt g = a.group.identity();
        if (!g.empty()) g[gen] = 1;

        std::vector<int> vperm(mk.quiver.num_vertices());
        for (int v = 0; v < mk.quiver.num_vertices(); ++v) {
            int o = od.orbit_of_vertex[mk.vertices[v].base];
            SubChar shift = detail::pairing_subchar(a.group, g, od.stabilizer[o]);
            SubChar img = subchar_mul(od.stabilizer[o], mk.vertices[v].chi, shift);
            const auto& chars = chars_per_orbit[o];
            int ci = -1;
            for (size_t c = 0; c < chars.size(); ++c)
                if (chars[c] == img) { ci = static_cast<int>(c); break; }
            if (ci < 0) throw std::logic_error("build_mckay: shifted character not found");
            vperm[v] = vertex_of.at({o, ci});
        }

        std::vector<std::pair<int, long long>> aperm(mk.quiver.num_arrows());
        for (int ar = 0; ar < mk.quiver.num_arrows(); ++ar) {
            const Arrow& e = mk.quiver.arrows[ar];
            int src2 = vperm[e.src], tgt2 = vperm[e.tgt];
            int target_arrow = -1;
            for (int b = 0; b < mk.quiver.num_arrows(); ++b)
                if (mk.origin[b].arrow_orbit == mk.origin[ar].arrow_orbit &&
                    mk.quiver.arrows[b].src == src2 && mk.quiver.arrows[b].tgt == tgt2) {
                    target_arrow = b;
                    break;
                }
            if (target_arrow < 0) throw std::logic_error("build_mckay: induced image arrow not found");

            SkewElement moved = alg.dual_act(g, mk.origin[ar].basis);
            const SkewElement& dst = mk.origin[target_arrow].basis;
            // moved must be an exact scalar multiple of dst
            if (moved.empty() || dst.empty())
                throw std::logic_error("build_mckay: empty basis in induced action");
            const auto& [k0, c0] = *dst.begin();
            auto it = moved.find(k0);
            if (it == moved.end())
                throw std::logic_error("build_mckay: induced image not proportional to basis");
            Cyc ratio = it->second / c0;
            if (!SkewAlgebra::equal(moved, SkewAlgebra::scale(ratio, dst)))
                throw std::logic_error("build_mckay: induced image not proportional to basis");
            long long exp = -1;
            for (long long k = 0; k < mk.engine_level; ++k)
                if (Cyc::root(mk.engine_level, k) == ratio) { exp = k; break; }
            if (exp < 0) throw std::logic_error("build_mckay: induced scalar is not a root of unity");
            aperm[ar] = {target_arrow, exp};
        }

        mk.induced.vertex_perm.push_back(std::move(vperm));
        mk.induced.arrow_perm.push_back(std::move(aperm));
    }

    {
        ValidationReport rep = validate_action(mk.quiver, mk.induced);
        if (!rep.valid())
            throw std::logic_error("build_mckay: induced action failed validation\n" + rep.str());
    }
    return mk;
}

// Explicit quiver isomorphism: vertex and arrow bijections preserving
// incidence, searched by backtracking over degree-compatible blocks.
struct QuiverIso {
    bool found = false;
    std::vector<int> vertex_map;  // domain vertex -> codomain vertex
    std::vector<int> arrow_map;
    std::string profile;          // degree signature diagnostics on failure
};

inline QuiverIso find_quiver_isomorphism(const Quiver& a, const Quiver& b) {
    QuiverIso iso;
    if (a.num_vertices() != b.num_vertices() || a.num_arrows() != b.num_arrows()) {
        iso.profile = "size mismatch";
        return iso;
    }
    int n = a.num_vertices();
    auto signature = [](const Quiver& q, int v) {
        return std::pair<int, int>(static_cast<int>(q.arrows_into(v).size()),
                                   static_cast<int>(q.arrows_out_of(v).size()));
    };
    {
        std::multiset<std::pair<int, int>> sa, sb;
        for (int v = 0; v < n; ++v) {
            sa.insert(signature(a, v));
            sb.insert(signature(b, v));
        }
        if (sa != sb) {
            std::ostringstream os;
            os << "degree profiles differ";
            iso.profile = os.str();
            return iso;
        }
    }

    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    // order domain vertices by rarity of signature for faster pruning
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::map<std::pair<int, int>, int> freq;
    for (int v = 0; v < n; ++v) freq[signature(a, v)]++;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        auto fx = freq[signature(a, x)], fy = freq[signature(a, y)];
        if (fx != fy) return fx < fy;
        return x < y;
    });

    auto compatible = [&](int v, int w) {
        if (signature(a, v) != signature(b, w)) return false;
        // arrow multiplicities against already mapped neighbours
        for (int u = 0; u < n; ++u) {
            if (map[u] == -1) continue;
            if (a.arrows_between(v, u).size() != b.arrows_between(w, map[u]).size()) return false;
            if (a.arrows_between(u, v).size() != b.arrows_between(map[u], w).size()) return false;
        }
        return true;
    };

    std::function<bool(size_t)> rec = [&](size_t pos) -> bool {
        if (pos == order.size()) return true;
        int v = order[pos];
        for (int w = 0; w < n; ++w) {
            if (used[w] || !compatible(v, w)) continue;
            map[v] = w;
            used[w] = 1;
            if (rec(pos + 1)) return true;
            map[v] = -1;
            used[w] = 0;
        }
        return false;
    };
    if (!rec(0)) {
        iso.profile = "backtracking exhausted";
        return iso;
    }

    iso.found = true;
    iso.vertex_map = map;
    iso.arrow_map.assign(a.num_arrows(), -1);
    std::vector<char> arrow_used(b.num_arrows(), 0);
    for (const Arrow& ar : a.arrows) {
        for (int cand : b.arrows_between(map[ar.src], map[ar.tgt]))
            if (!arrow_used[cand]) {
                iso.arrow_map[ar.id] = cand;
                arrow_used[cand] = 1;
                break;
            }
        if (iso.arrow_map[ar.id] == -1) {
            iso.found = false;
            iso.profile = "arrow matching failed";
            return iso;
        }
    }
    return iso;
}

// Applying the construction twice returns the original quiver (up to
// isomorphism) when the group is abelian.
inline QuiverIso double_mckay_check(const Quiver& q, const MonomialAction& a) {
    McKayQuiver first = build_mckay(q, a);
    McKayQuiver second = build_mckay(first.quiver, first.induced);
    return find_quiver_isomorphism(second.quiver, q);
}

}  // namespace quiverfold
