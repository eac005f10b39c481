#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "action.hpp"
#include "intmat.hpp"
#include "mckay.hpp"
#include "quiver.hpp"
#include "rational.hpp"

namespace quiverfold {

// Symmetric generalized Cartan matrix of a loop-free quiver:
// 2 on the diagonal, minus the number of edges between i and j elsewhere.
inline IntMat cartan_of_quiver(const Quiver& q) {
    if (q.has_loop()) throw std::invalid_argument("cartan_of_quiver: quiver has a loop");
    int n = q.num_vertices();
    IntMat a(n, n);
    for (int i = 0; i < n; ++i) a.at(i, i) = 2;
    for (const Arrow& ar : q.arrows) {
        a.at(ar.src, ar.tgt) -= 1;
        a.at(ar.tgt, ar.src) -= 1;
    }
    return a;
}

// Folded valued-graph data: B sums the quiver Cartan matrix over orbit
// pairs, D holds orbit sizes, C = D^{-1} B is the valued-graph GCM.
struct ValuedGraphData {
    std::vector<int> reps;            // representative vertices in their chosen order
    std::vector<std::string> names;   // names of the representatives
    std::vector<long long> d;         // orbit sizes
    IntMat b;
    IntMat c;

    struct Edge {
        int i, j;            // positions in reps, i < j
        long long cij_abs;   // |c_ij|
        long long cji_abs;   // |c_ji|
    };
    std::vector<Edge> edges;

    int rank() const { return static_cast<int>(reps.size()); }

    std::string str() const {
        std::ostringstream os;
        os << "vertices:";
        for (size_t i = 0; i < names.size(); ++i) os << " " << names[i] << "(d=" << d[i] << ")";
        os << "\nB =\n" << b.str() << "C =\n" << c.str();
        os << "edges:";
        for (const Edge& e : edges)
            os << " " << names[e.i] << "--(" << e.cij_abs << "," << e.cji_abs << ")--" << names[e.j];
        os << "\n";
        return os.str();
    }
};

inline ValuedGraphData fold_cartan(const Quiver& q, const OrbitData& od) {
    IntMat a = cartan_of_quiver(q);
    int n = static_cast<int>(od.reps.size());
    ValuedGraphData g;
    g.reps = od.reps;
    for (int v : od.reps) g.names.push_back(q.vertex_names[v]);
    for (int o = 0; o < n; ++o) g.d.push_back(static_cast<long long>(od.vertex_orbits[o].size()));
    g.b = IntMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                g.b.at(i, i) = 2 * g.d[i];
                continue;
            }
            long long s = 0;
            for (int u : od.vertex_orbits[i])
                for (int v : od.vertex_orbits[j]) s += a.at(u, v);
            g.b.at(i, j) = s;
        }
    g.c = IntMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (g.b.at(i, j) % g.d[i] != 0)
                throw std::logic_error("fold_cartan: B row not divisible by orbit size");
            g.c.at(i, j) = g.b.at(i, j) / g.d[i];
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.c.at(i, j) != 0)
                g.edges.push_back({i, j, -g.c.at(i, j), -g.c.at(j, i)});
    return g;
}

// Minimal positive integer symmetrizer of a GCM: d_i c_ij = d_j c_ji.
inline std::vector<long long> gcm_symmetrizer(const IntMat& c) {
    int n = c.rows;
    if (c.cols != n) throw std::invalid_argument("gcm_symmetrizer: not square");
    std::vector<Rational> d(n, Rational(0));
    for (int s = 0; s < n; ++s) {
        if (d[s] != 0) continue;
        d[s] = Rational(1);
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (i == j || c.at(i, j) == 0) continue;
                if (c.at(j, i) == 0)
                    throw std::invalid_argument("gcm_symmetrizer: c_ij = 0 xor c_ji = 0");
                Rational want = d[i] * Rational(static_cast<long>(c.at(i, j))) /
                                Rational(static_cast<long>(c.at(j, i)));
                if (d[j] == 0) {
                    d[j] = want;
                    stack.push_back(j);
                } else if (d[j] != want) {
                    throw std::invalid_argument("gcm_symmetrizer: matrix is not symmetrizable");
                }
            }
        }
    }
    long long l = 1;
    for (const Rational& v : d) l = ll_lcm(l, to_ll(Rational(v.get_den())));
    std::vector<long long> out(n);
    long long g = 0;
    for (int i = 0; i < n; ++i) {
        out[i] = to_ll(d[i] * Rational(static_cast<long>(l)));
        g = ll_gcd(g, out[i]);
    }
    for (long long& v : out) v /= g;
    return out;
}

struct TypeClassification {
    enum class Kind { finite, affine, indefinite };
    struct Component {
        std::vector<int> vertices;  // indices into the GCM
        Kind kind;
        std::string label;          // Dynkin label when finite, else empty
    };
    std::vector<Component> components;

    bool all_finite() const {
        for (const auto& c : components)
            if (c.kind != Kind::finite) return false;
        return true;
    }
    bool has_affine() const {
        for (const auto& c : components)
            if (c.kind == Kind::affine) return true;
        return false;
    }
    Kind overall() const {
        Kind k = Kind::finite;
        for (const auto& c : components) {
            if (c.kind == Kind::indefinite) return Kind::indefinite;
            if (c.kind == Kind::affine) k = Kind::affine;
        }
        return k;
    }
    std::string str() const {
        std::ostringstream os;
        for (const auto& c : components) {
            os << "{";
            for (size_t i = 0; i < c.vertices.size(); ++i) os << (i ? "," : "") << c.vertices[i];
            os << "}: ";
            switch (c.kind) {
                case Kind::finite: os << "finite " << c.label; break;
                case Kind::affine: os << "affine"; break;
                case Kind::indefinite: os << "indefinite"; break;
            }
            os << "  ";
        }
        return os.str();
    }
};

namespace detail {

// Dynkin label of a connected finite-type valued component given the GCM
// restricted to it. Assumes finiteness was already established.
inline std::string dynkin_label(const IntMat& c, const std::vector<int>& verts) {
    int k = static_cast<int>(verts.size());
    auto cij = [&](int a, int b) { return c.at(verts[a], verts[b]); };
    if (k == 1) return "A1";

    std::vector<std::vector<int>> adj(k);
    int max_weight = 1;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            if (a == b || cij(a, b) == 0) continue;
            adj[a].push_back(b);
            max_weight = std::max<long long>(max_weight, cij(a, b) * cij(b, a));
        }

    if (max_weight == 3) return k == 2 ? "G2" : "unknown";

    std::vector<int> deg(k);
    for (int a = 0; a < k; ++a) deg[a] = static_cast<int>(adj[a].size());
    int branches = static_cast<int>(std::count(deg.begin(), deg.end(), 3));
    if (*std::max_element(deg.begin(), deg.end()) > 3) return "unknown";

    if (max_weight == 1) {
        if (branches == 0) return "A" + std::to_string(k);
        if (branches != 1) return "unknown";
        int center = static_cast<int>(std::find(deg.begin(), deg.end(), 3) - deg.begin());
        std::vector<int> tails;
        for (int nb : adj[center]) {
            int len = 1, prev = center, cur = nb;
            while (deg[cur] == 2) {
                int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = nxt;
                ++len;
            }
            tails.push_back(len);
        }
        std::sort(tails.begin(), tails.end());
        if (tails[0] == 1 && tails[1] == 1) return "D" + std::to_string(k);
        if (tails == std::vector<int>{1, 2, 2}) return "E6";
        if (tails == std::vector<int>{1, 2, 3}) return "E7";
        if (tails == std::vector<int>{1, 2, 4}) return "E8";
        return "unknown";
    }

    // one double edge on a path: B, C or F4
    if (branches != 0) return "unknown";
    std::vector<int> ends;
    for (int a = 0; a < k; ++a)
        if (deg[a] == 1) ends.push_back(a);
    if (ends.size() != 2) return "unknown";
    // walk the path from one end
    std::vector<int> path{ends[0]};
    while (path.size() < static_cast<size_t>(k)) {
        int cur = path.back();
        int prev = path.size() >= 2 ? path[path.size() - 2] : -1;
        for (int nb : adj[cur])
            if (nb != prev) {
                path.push_back(nb);
                break;
            }
    }
    int double_pos = -1, doubles = 0;
    for (int t = 0; t + 1 < k; ++t)
        if (cij(path[t], path[t + 1]) * cij(path[t + 1], path[t]) == 2) {
            double_pos = t;
            ++doubles;
        }
    if (doubles != 1) return "unknown";
    if (k == 2) return "B2";
    if (k == 4 && double_pos == 1) return "F4";
    if (double_pos == k - 2 || double_pos == 0) {
        // orient so the double edge is the last one
        if (double_pos == 0) std::reverse(path.begin(), path.end());
        int last = path[k - 1], before = path[k - 2];
        // short last root: c(last,before) = -2 (B); long last root: c(before,last) = -2 (C)
        if (cij(last, before) == -2) return "B" + std::to_string(k);
        return "C" + std::to_string(k);
    }
    return "unknown";
}

inline long long principal_minor(const IntMat& b, const std::vector<int>& idx) {
    int k = static_cast<int>(idx.size());
    IntMat sub(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub.at(i, j) = b.at(idx[i], idx[j]);
    return int_det(sub);
}

}  // namespace detail

// Finite / affine / indefinite per connected component, with Dynkin labels.
// Finite: all principal minors of the symmetrized matrix positive.
// Affine: determinant zero, all proper principal minors positive.
inline TypeClassification classify(const IntMat& c) {
    int n = c.rows;
    std::vector<long long> d = gcm_symmetrizer(c);
    IntMat b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.at(i, j) = d[i] * c.at(i, j);

    // components of the underlying graph
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w)
                if (w != v && c.at(v, w) != 0 && comp[w] == -1) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
        }
        ++nc;
    }

    TypeClassification out;
    for (int cc = 0; cc < nc; ++cc) {
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (comp[v] == cc) verts.push_back(v);
        int k = static_cast<int>(verts.size());
        if (k > 20) throw std::invalid_argument("classify: component too large for minor enumeration");

        bool all_pos = true, proper_pos = true;
        long long full_det = detail::principal_minor(b, verts);
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> idx;
            for (int t = 0; t < k; ++t)
                if (mask & (1u << t)) idx.push_back(verts[t]);
            long long det = detail::principal_minor(b, idx);
            if (det <= 0) {
                all_pos = false;
                if (idx.size() < static_cast<size_t>(k)) proper_pos = false;
            }
        }

        TypeClassification::Component ccomp;
        ccomp.vertices = verts;
        if (all_pos) {
            ccomp.kind = TypeClassification::Kind::finite;
            ccomp.label = detail::dynkin_label(c, verts);
        } else if (full_det == 0 && proper_pos) {
            ccomp.kind = TypeClassification::Kind::affine;
        } else {
            ccomp.kind = TypeClassification::Kind::indefinite;
        }
        out.components.push_back(std::move(ccomp));
    }
    return out;
}

inline TypeClassification classify(const ValuedGraphData& g) { return classify(g.c); }

// Duality of the fold: folding the McKay quiver by the induced action gives
// the transposed GCM. Gamma-hat is reindexed so that its rows align with
// Gamma's (each orbit of the new quiver lies over one representative).
struct DualityReport {
    ValuedGraphData gamma;
    ValuedGraphData gamma_hat;  // reindexed to gamma's order
    bool c_transposed = false;
    bool d_dual = false;        // D-hat = |G| D^{-1}
    bool b_dual = false;        // B-hat = |G| D^{-1} B D^{-1}
    bool ok() const { return c_transposed && d_dual && b_dual; }
    std::string str() const {
        std::ostringstream os;
        os << "Gamma:\n" << gamma.str() << "Gamma-hat (aligned):\n" << gamma_hat.str();
        os << "C-hat = C^T: " << (c_transposed ? "yes" : "NO") << "\n";
        os << "D-hat = |G| D^{-1}: " << (d_dual ? "yes" : "NO") << "\n";
        os << "B-hat = |G| D^{-1} B D^{-1}: " << (b_dual ? "yes" : "NO") << "\n";
        return os.str();
    }
};

inline DualityReport dual_check(const Quiver& q, const MonomialAction& a) {
    DualityReport rep;
    McKayQuiver mk = build_mckay(q, a);
    rep.gamma = fold_cartan(q, mk.base_orbits);
    OrbitData od_hat = compute_orbits(mk.quiver, mk.induced);
    ValuedGraphData gh = fold_cartan(mk.quiver, od_hat);

    // position of each new-quiver orbit in gamma's index order
    int n = rep.gamma.rank();
    if (gh.rank() != n) throw std::logic_error("dual_check: rank mismatch between the two folds");
    std::vector<int> pos(n, -1);  // gamma index -> gamma-hat index
    for (int t = 0; t < n; ++t) {
        int base = mk.vertices[gh.reps[t]].base;
        int gi = -1;
        for (int s = 0; s < n; ++s)
            if (rep.gamma.reps[s] == base) gi = s;
        if (gi < 0) throw std::logic_error("dual_check: orbit of the new quiver over no representative");
        pos[gi] = t;
    }

    ValuedGraphData aligned;
    aligned.b = IntMat(n, n);
    aligned.c = IntMat(n, n);
    for (int i = 0; i < n; ++i) {
        aligned.reps.push_back(gh.reps[pos[i]]);
        aligned.names.push_back(gh.names[pos[i]]);
        aligned.d.push_back(gh.d[pos[i]]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            aligned.b.at(i, j) = gh.b.at(pos[i], pos[j]);
            aligned.c.at(i, j) = gh.c.at(pos[i], pos[j]);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (aligned.c.at(i, j) != 0)
                aligned.edges.push_back({i, j, -aligned.c.at(i, j), -aligned.c.at(j, i)});
    rep.gamma_hat = aligned;

    long long gorder = a.group.order();
    rep.c_transposed = rep.d_dual = rep.b_dual = true;
    for (int i = 0; i < n; ++i) {
        if (aligned.d[i] * rep.gamma.d[i] != gorder) rep.d_dual = false;
        for (int j = 0; j < n; ++j) {
            if (aligned.c.at(i, j) != rep.gamma.c.at(j, i)) rep.c_transposed = false;
            if (aligned.b.at(i, j) * rep.gamma.d[i] * rep.gamma.d[j] !=
                gorder * rep.gamma.b.at(i, j))
                rep.b_dual = false;
        }
    }
    return rep;
}

// Bridge identity pinning the index convention: for all i, j and any fixed
// character sigma of the target stabilizer, b_ij = d_i * sum_rho a_hat[(i,rho),(j,sigma)].
inline bool bridge_identity_holds(const Quiver& q, const McKayQuiver& mk) {
    ValuedGraphData g = fold_cartan(q, mk.base_orbits);
    IntMat ahat = cartan_of_quiver(mk.quiver);
    int n = g.rank();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            // all new-quiver vertices over representative i resp. j
            std::vector<int> over_i, over_j;
            for (int v = 0; v < mk.quiver.num_vertices(); ++v) {
                if (mk.vertices[v].base == g.reps[i]) over_i.push_back(v);
                if (mk.vertices[v].base == g.reps[j]) over_j.push_back(v);
            }
            for (int vj : over_j) {
                long long s = 0;
                for (int vi : over_i) s += ahat.at(vi, vj);
                if (g.d[i] * s != g.b.at(i, j)) return false;
            }
        }
    return true;
}

}  // namespace quiverfold
