#pragma once

// Exact quiver representations over cyclotomic fields: twisting by a monomial
// group action, orbit modules Sigma(M), certified isomorphism testing, and
// reflection-functor construction of the indecomposables of a finite-type
// quiver.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "abelian.hpp"
#include "action.hpp"
#include "cartan.hpp"
#include "cyclotomic.hpp"
#include "linalg.hpp"
#include "quiver.hpp"
#include "roots.hpp"

namespace quiverfold {

using CycMat = Mat<Cyc>;

// X_alpha for an arrow alpha: i -> j is a dims[j] x dims[i] matrix acting on
// column vectors, so paths compose function-style like everywhere else.
struct Representation {
    Quiver quiver;
    std::vector<long long> dims;  // per vertex
    std::vector<CycMat> mats;     // per arrow id

    LatticeVector dim_vector() const { return LatticeVector(dims); }

    long long total_dim() const {
        long long t = 0;
        for (long long d : dims) t += d;
        return t;
    }
};

inline bool same_quiver_shape(const Quiver& a, const Quiver& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_arrows() != b.num_arrows()) return false;
    for (int t = 0; t < a.num_arrows(); ++t)
        if (a.arrows[t].src != b.arrows[t].src || a.arrows[t].tgt != b.arrows[t].tgt) return false;
    return true;
}

inline Representation make_representation(const Quiver& q, std::vector<long long> dims,
                                          std::vector<CycMat> mats) {
    if (static_cast<int>(dims.size()) != q.num_vertices())
        throw std::invalid_argument("representation: one dimension per vertex required");
    for (long long d : dims)
        if (d < 0) throw std::invalid_argument("representation: negative dimension");
    if (static_cast<int>(mats.size()) != q.num_arrows())
        throw std::invalid_argument("representation: one matrix per arrow required");
    for (const Arrow& a : q.arrows) {
        const CycMat& m = mats[static_cast<size_t>(a.id)];
        if (m.rows != dims[static_cast<size_t>(a.tgt)] || m.cols != dims[static_cast<size_t>(a.src)])
            throw std::invalid_argument("representation: matrix shape mismatch at arrow " +
                                        q.arrow_names[static_cast<size_t>(a.id)]);
    }
    Representation r;
    r.quiver = q;
    r.dims = std::move(dims);
    r.mats = std::move(mats);
    return r;
}

inline Representation zero_representation(const Quiver& q, const std::vector<long long>& dims) {
    std::vector<CycMat> mats;
    mats.reserve(static_cast<size_t>(q.num_arrows()));
    for (const Arrow& a : q.arrows)
        mats.emplace_back(static_cast<int>(dims[static_cast<size_t>(a.tgt)]),
                          static_cast<int>(dims[static_cast<size_t>(a.src)]));
    return make_representation(q, dims, std::move(mats));
}

inline Representation simple_representation(const Quiver& q, int v) {
    std::vector<long long> dims(static_cast<size_t>(q.num_vertices()), 0);
    dims[static_cast<size_t>(v)] = 1;
    return zero_representation(q, dims);
}

inline Representation direct_sum(const Representation& m, const Representation& n) {
    if (!same_quiver_shape(m.quiver, n.quiver))
        throw std::invalid_argument("direct_sum: representations of different quivers");
    std::vector<long long> dims(m.dims.size());
    for (size_t v = 0; v < dims.size(); ++v) dims[v] = m.dims[v] + n.dims[v];
    std::vector<CycMat> mats;
    mats.reserve(m.mats.size());
    for (const Arrow& a : m.quiver.arrows) {
        const CycMat& x = m.mats[static_cast<size_t>(a.id)];
        const CycMat& y = n.mats[static_cast<size_t>(a.id)];
        CycMat z(x.rows + y.rows, x.cols + y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
        for (int i = 0; i < y.rows; ++i)
            for (int j = 0; j < y.cols; ++j) z.at(x.rows + i, x.cols + j) = y.at(i, j);
        mats.push_back(std::move(z));
    }
    return make_representation(m.quiver, std::move(dims), std::move(mats));
}

// Twisted module ^gM: the arrow alpha acts through its preimage g^{-1}(alpha)
// together with the action scalar, so vertex spaces move by g and
// dim(^gM) = g(dim M).
inline Representation twist(const MonomialAction& act, const GroupElt& g,
                            const Representation& m) {
    const Quiver& q = m.quiver;
    if (act.group.num_factors() > 0) {
        if (static_cast<int>(act.vertex_perm[0].size()) != q.num_vertices() ||
            static_cast<int>(act.arrow_perm[0].size()) != q.num_arrows())
            throw std::invalid_argument("twist: representation does not live on the acted quiver");
    }
    GroupElt gi = act.group.neg(g);
    std::vector<long long> dims(m.dims.size());
    for (int v = 0; v < q.num_vertices(); ++v)
        dims[static_cast<size_t>(v)] = m.dims[static_cast<size_t>(act_vertex(act, gi, v))];
    std::vector<CycMat> mats(m.mats.size());
    for (const Arrow& a : q.arrows) {
        auto [pre, k] = act_arrow(act, gi, a.id);
        CycMat x = m.mats[static_cast<size_t>(pre)];
        if (k != 0) {
            Cyc scale = Cyc::root(act.level, k);
            for (auto& e : x.a) e = scale * e;
        }
        mats[static_cast<size_t>(a.id)] = std::move(x);
    }
    return make_representation(q, std::move(dims), std::move(mats));
}

// Basis of the space of intertwiners M -> N: per-vertex matrices phi_v with
// phi_{tgt} X_alpha = Y_alpha phi_{src} for every arrow, solved exactly.
inline std::vector<std::vector<CycMat>> hom_space(const Representation& m,
                                                  const Representation& n) {
    if (!same_quiver_shape(m.quiver, n.quiver))
        throw std::invalid_argument("hom_space: representations of different quivers");
    const Quiver& q = m.quiver;
    int nv = q.num_vertices();
    std::vector<int> off(static_cast<size_t>(nv) + 1, 0);
    for (int v = 0; v < nv; ++v)
        off[static_cast<size_t>(v) + 1] =
            off[static_cast<size_t>(v)] + static_cast<int>(n.dims[static_cast<size_t>(v)] *
                                                           m.dims[static_cast<size_t>(v)]);
    int unknowns = off[static_cast<size_t>(nv)];
    // phi_v is n.dims[v] x m.dims[v], stored row-major at offset off[v].
    auto idx = [&](int v, int r, int c) {
        return off[static_cast<size_t>(v)] + r * static_cast<int>(m.dims[static_cast<size_t>(v)]) + c;
    };
    int rows = 0;
    for (const Arrow& a : q.arrows)
        rows += static_cast<int>(n.dims[static_cast<size_t>(a.tgt)] *
                                 m.dims[static_cast<size_t>(a.src)]);
    Mat<Cyc> sys(rows, unknowns);
    int rowbase = 0;
    for (const Arrow& a : q.arrows) {
        const CycMat& x = m.mats[static_cast<size_t>(a.id)];  // m.dims[tgt] x m.dims[src]
        const CycMat& y = n.mats[static_cast<size_t>(a.id)];  // n.dims[tgt] x n.dims[src]
        int dmi = static_cast<int>(m.dims[static_cast<size_t>(a.src)]);
        int dnj = static_cast<int>(n.dims[static_cast<size_t>(a.tgt)]);
        for (int r = 0; r < dnj; ++r)
            for (int c = 0; c < dmi; ++c) {
                int row = rowbase + r * dmi + c;
                // (phi_j X)_rc - (Y phi_i)_rc = 0
                for (int s = 0; s < x.rows; ++s)
                    if (!is_zero(x.at(s, c)))
                        sys.at(row, idx(a.tgt, r, s)) = sys.at(row, idx(a.tgt, r, s)) + x.at(s, c);
                for (int s = 0; s < y.cols; ++s)
                    if (!is_zero(y.at(r, s)))
                        sys.at(row, idx(a.src, s, c)) = sys.at(row, idx(a.src, s, c)) - y.at(r, s);
            }
        rowbase += dnj * dmi;
    }
    Mat<Cyc> ker = nullspace(sys);
    std::vector<std::vector<CycMat>> basis;
    basis.reserve(static_cast<size_t>(ker.rows));
    for (int b = 0; b < ker.rows; ++b) {
        std::vector<CycMat> maps;
        maps.reserve(static_cast<size_t>(nv));
        for (int v = 0; v < nv; ++v) {
            CycMat phi(static_cast<int>(n.dims[static_cast<size_t>(v)]),
                       static_cast<int>(m.dims[static_cast<size_t>(v)]));
            for (int r = 0; r < phi.rows; ++r)
                for (int c = 0; c < phi.cols; ++c) phi.at(r, c) = ker.at(b, idx(v, r, c));
            maps.push_back(std::move(phi));
        }
        basis.push_back(std::move(maps));
    }
    return basis;
}

inline Cyc determinant(CycMat m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant: matrix not square");
    Cyc d(1);
    for (int col = 0; col < m.cols; ++col) {
        int piv = -1;
        for (int r = col; r < m.rows; ++r)
            if (!is_zero(m.at(r, col))) {
                piv = r;
                break;
            }
        if (piv < 0) return Cyc(0);
        if (piv != col) {
            for (int j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(col, j));
            d = Cyc(0) - d;
        }
        d = d * m.at(col, col);
        for (int r = col + 1; r < m.rows; ++r) {
            if (is_zero(m.at(r, col))) continue;
            Cyc f = m.at(r, col) / m.at(col, col);
            for (int j = col; j < m.cols; ++j) m.at(r, j) = m.at(r, j) - f * m.at(col, j);
        }
    }
    return d;
}

struct IsoResult {
    bool isomorphic = false;
    std::vector<CycMat> witness;  // per-vertex invertible intertwiner when isomorphic
    std::string certificate;      // reason when certified non-isomorphic
};

namespace detail {

// Combined coefficient vector -> per-vertex maps, and the product of their
// determinants. A nonzero product means every vertex map is invertible.
inline std::vector<CycMat> combine_maps(const std::vector<std::vector<CycMat>>& basis,
                                        const std::vector<Rational>& coeff) {
    std::vector<CycMat> out;
    size_t nv = basis[0].size();
    out.reserve(nv);
    for (size_t v = 0; v < nv; ++v) {
        CycMat acc(basis[0][v].rows, basis[0][v].cols);
        for (size_t k = 0; k < basis.size(); ++k) {
            if (is_zero(coeff[k])) continue;
            Cyc c(coeff[k]);
            for (size_t t = 0; t < acc.a.size(); ++t) acc.a[t] = acc.a[t] + c * basis[k][v].a[t];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

inline bool all_vertex_maps_invertible(const std::vector<CycMat>& maps) {
    for (const CycMat& m : maps) {
        if (m.rows != m.cols) return false;
        if (m.rows == 0) continue;
        if (is_zero(determinant(m))) return false;
    }
    return true;
}

}  // namespace detail

// Decides M = N over the cyclotomic field. An isomorphism, if one exists, is
// an invertible element of the hom space; the product of the vertex-map
// determinants is a polynomial of total degree <= total_dim in the basis
// coefficients, so vanishing on the full integer grid {0..total_dim}^dim_hom
// certifies that no coefficient choice is invertible. Unit vectors and a few
// seeded random combinations run first as a cheap search.
inline IsoResult is_isomorphic(const Representation& m, const Representation& n,
                               long long seed = 12345) {
    IsoResult res;
    if (!same_quiver_shape(m.quiver, n.quiver))
        throw std::invalid_argument("is_isomorphic: representations of different quivers");
    if (m.dims != n.dims) {
        res.certificate = "dimension vectors differ";
        return res;
    }
    auto basis = hom_space(m, n);
    if (basis.empty()) {
        if (m.total_dim() == 0) {
            res.isomorphic = true;
            res.witness.assign(m.dims.size(), CycMat(0, 0));
            return res;
        }
        res.certificate = "hom space is zero";
        return res;
    }
    size_t h = basis.size();
    auto attempt = [&](const std::vector<Rational>& coeff) -> bool {
        auto maps = detail::combine_maps(basis, coeff);
        if (!detail::all_vertex_maps_invertible(maps)) return false;
        res.isomorphic = true;
        res.witness = std::move(maps);
        return true;
    };
    std::vector<Rational> coeff(h, Rational(0));
    for (size_t k = 0; k < h; ++k) {
        coeff.assign(h, Rational(0));
        coeff[k] = Rational(1);
        if (attempt(coeff)) return res;
    }
    std::mt19937_64 rng(static_cast<unsigned long long>(seed));
    std::uniform_int_distribution<int> pickc(-9, 9);
    for (int t = 0; t < 8; ++t) {
        for (size_t k = 0; k < h; ++k) coeff[k] = Rational(pickc(rng));
        if (attempt(coeff)) return res;
    }
    // Exhaustive grid; doubles as the identically-zero certificate.
    long long span = m.total_dim() + 1;
    double total = 1;
    for (size_t k = 0; k < h; ++k) total *= static_cast<double>(span);
    if (total > 2e5)
        throw std::runtime_error("is_isomorphic: certification grid budget exceeded");
    coeff.assign(h, Rational(0));
    std::vector<long long> odo(h, 0);
    while (true) {
        for (size_t k = 0; k < h; ++k) coeff[k] = Rational(static_cast<int>(odo[k]));
        if (attempt(coeff)) return res;
        size_t p = 0;
        while (p < h && odo[p] == span - 1) odo[p++] = 0;
        if (p == h) break;
        ++odo[p];
    }
    res.certificate = "determinant polynomial vanishes on the full certification grid";
    return res;
}

// Orbit module Sigma(M): direct sum of one twist per coset of
// H_M = {g : ^gM = M}, with coset representatives chosen lexicographically.
struct SigmaModule {
    Representation module;
    std::vector<GroupElt> stabilizer;
    std::vector<GroupElt> coset_reps;
    bool invariant = false;  // ^g Sigma(M) = Sigma(M) for every generator, verified
};

inline Representation direct_sum_of_twists(const MonomialAction& act, const Representation& m,
                                           const std::vector<GroupElt>& elems) {
    if (elems.empty()) throw std::invalid_argument("direct_sum_of_twists: empty element list");
    Representation out = twist(act, elems[0], m);
    for (size_t t = 1; t < elems.size(); ++t) out = direct_sum(out, twist(act, elems[t], m));
    return out;
}

inline SigmaModule sigma_module(const MonomialAction& act, const Representation& m,
                                long long seed = 12345) {
    SigmaModule s;
    std::vector<GroupElt> all = act.group.all_elements();
    for (const GroupElt& g : all)
        if (is_isomorphic(twist(act, g, m), m, seed).isomorphic) s.stabilizer.push_back(g);
    std::vector<GroupElt> taken;  // all elements of already-claimed cosets
    for (const GroupElt& g : all) {
        bool fresh = true;
        for (const GroupElt& t : taken)
            if (t == g) {
                fresh = false;
                break;
            }
        if (!fresh) continue;
        s.coset_reps.push_back(g);
        for (const GroupElt& h : s.stabilizer) taken.push_back(act.group.reduce(act.group.add(g, h)));
    }
    s.module = direct_sum_of_twists(act, m, s.coset_reps);
    s.invariant = true;
    for (int k = 0; k < act.group.num_factors(); ++k) {
        GroupElt gen(static_cast<size_t>(act.group.num_factors()), 0);
        gen[static_cast<size_t>(k)] = 1;
        if (!is_isomorphic(twist(act, gen, s.module), s.module, seed).isomorphic) {
            s.invariant = false;
            break;
        }
    }
    return s;
}

namespace detail {

inline Quiver reflect_quiver(const Quiver& q, int v) {
    Quiver out = q;
    for (Arrow& a : out.arrows)
        if (a.src == v || a.tgt == v) std::swap(a.src, a.tgt);
    return out;
}

// Sink-first admissible ordering: position k is a sink of the quiver obtained
// by reflecting at positions 0..k-1. Exists exactly when q is acyclic.
inline std::vector<int> admissible_sink_order(const Quiver& q) {
    int n = q.num_vertices();
    std::vector<int> outdeg(static_cast<size_t>(n), 0);
    for (const Arrow& a : q.arrows) ++outdeg[static_cast<size_t>(a.src)];
    std::vector<bool> used(static_cast<size_t>(n), false);
    std::vector<int> order;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v)
            if (!used[static_cast<size_t>(v)] && outdeg[static_cast<size_t>(v)] == 0) {
                pick = v;
                break;
            }
        if (pick < 0) throw std::invalid_argument("admissible ordering requires an acyclic quiver");
        used[static_cast<size_t>(pick)] = true;
        order.push_back(pick);
        // removing a sink: arrows into it no longer count as outgoing elsewhere
        for (const Arrow& a : q.arrows)
            if (a.tgt == pick && !used[static_cast<size_t>(a.src)])
                --outdeg[static_cast<size_t>(a.src)];
    }
    return order;
}

// Inverse reflection functor at a source v of x.quiver. The new space at v is
// the cokernel of the stacked arrow map, modelled by a left-nullspace basis.
inline Representation reflect_functor_at_source(const Representation& x, int v,
                                                const Quiver& out_quiver) {
    const Quiver& q = x.quiver;
    if (!q.arrows_into(v).empty())
        throw std::invalid_argument("reflection functor: vertex is not a source");
    std::vector<int> out_arrows = q.arrows_out_of(v);  // increasing arrow id
    int dv = static_cast<int>(x.dims[static_cast<size_t>(v)]);
    int total = 0;
    std::vector<int> block(out_arrows.size(), 0);
    for (size_t t = 0; t < out_arrows.size(); ++t) {
        block[t] = total;
        total += static_cast<int>(x.dims[static_cast<size_t>(q.arrows[static_cast<size_t>(out_arrows[t])].tgt)]);
    }
    Mat<Cyc> phi(total, dv);
    for (size_t t = 0; t < out_arrows.size(); ++t) {
        const CycMat& xa = x.mats[static_cast<size_t>(out_arrows[t])];
        for (int i = 0; i < xa.rows; ++i)
            for (int j = 0; j < xa.cols; ++j) phi.at(block[t] + i, j) = xa.at(i, j);
    }
    Mat<Cyc> phit(dv, total);
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < dv; ++j) phit.at(j, i) = phi.at(i, j);
    Mat<Cyc> proj = nullspace(phit);  // rows p with p * phi = 0; ker(proj) = im(phi)
    int z = proj.rows;
    std::vector<long long> dims = x.dims;
    dims[static_cast<size_t>(v)] = z;
    std::vector<CycMat> mats(x.mats.size());
    for (const Arrow& a : out_quiver.arrows) {
        if (a.tgt == v) {
            size_t t = 0;
            while (out_arrows[t] != a.id) ++t;
            int dw = static_cast<int>(x.dims[static_cast<size_t>(a.src)]);
            CycMat m(z, dw);
            for (int i = 0; i < z; ++i)
                for (int j = 0; j < dw; ++j) m.at(i, j) = proj.at(i, block[t] + j);
            mats[static_cast<size_t>(a.id)] = std::move(m);
        } else {
            mats[static_cast<size_t>(a.id)] = x.mats[static_cast<size_t>(a.id)];
        }
    }
    return make_representation(out_quiver, std::move(dims), std::move(mats));
}

}  // namespace detail

// One indecomposable per positive root, built by inverse reflection functors
// along a periodic admissible sink sequence. Requires every component to be
// of finite type.
inline std::vector<Representation> indecomposables_dynkin(const Quiver& q) {
    IntMat cart = cartan_of_quiver(q);
    if (!classify(cart).all_finite())
        throw std::invalid_argument("indecomposables_dynkin: quiver is not of finite type");
    int n = q.num_vertices();
    std::vector<int> order = detail::admissible_sink_order(q);
    std::vector<Quiver> stage(static_cast<size_t>(n));  // stage[k]: after k reflections
    stage[0] = q;
    for (int k = 1; k < n; ++k)
        stage[static_cast<size_t>(k)] =
            detail::reflect_quiver(stage[static_cast<size_t>(k) - 1], order[static_cast<size_t>(k) - 1]);
    BilinearForm form = BilinearForm::from_symmetric(cart);
    RootSystemView roots = enumerate_roots(form);
    std::vector<Representation> out;
    out.reserve(roots.real_pos.size());
    long long cap = 64LL * n * (static_cast<long long>(roots.real_pos.size()) + 1);
    for (const RealRoot& rr : roots.real_pos) {
        LatticeVector cur = rr.root;
        std::vector<int> word;  // s_1 .. s_{t-1}
        long long steps = 0;
        while (true) {
            int s = order[static_cast<size_t>(steps % n)];
            LatticeVector next = form.reflect(s, cur);
            if (!next.is_positive()) break;
            word.push_back(s);
            cur = next;
            if (++steps > cap)
                throw std::logic_error("indecomposables_dynkin: reflection sequence did not terminate");
        }
        int tip = order[static_cast<size_t>(steps % n)];
        if (cur != LatticeVector::basis(n, tip))
            throw std::logic_error("indecomposables_dynkin: sequence did not end at a simple root");
        Representation x =
            simple_representation(stage[static_cast<size_t>(word.size() % n)], tip);
        for (size_t k = word.size(); k-- > 0;)
            x = detail::reflect_functor_at_source(x, word[k], stage[k % static_cast<size_t>(n)]);
        if (x.dim_vector() != rr.root)
            throw std::logic_error("indecomposables_dynkin: constructed module has the wrong dimension vector");
        out.push_back(std::move(x));
    }
    return out;
}

// For every positive root of the folded valued graph: transport the witness
// word to composite reflections on the base lattice, take the indecomposable
// with that dimension vector, and check that its orbit module hits the folded
// root with one summand per half-norm.
struct OrbitModuleReport {
    ValidationReport checks;
    std::vector<LatticeVector> gamma_roots;
    std::vector<long long> summand_counts;

    bool ok() const { return checks.valid(); }
    std::string str() const { return checks.str(); }
};

inline OrbitModuleReport verify_orbit_modules(const FoldingMaps& fm, long long seed = 12345) {
    if (!classify(cartan_of_quiver(fm.q)).all_finite())
        throw std::invalid_argument("verify_orbit_modules: base quiver is not of finite type");
    OrbitModuleReport rep;
    std::vector<Representation> indec = indecomposables_dynkin(fm.q);
    std::map<std::vector<long long>, size_t> by_dim;
    for (size_t t = 0; t < indec.size(); ++t) by_dim[indec[t].dim_vector().c] = t;
    RootSystemView gamma = enumerate_roots(fm.form_gamma);
    for (const RealRoot& rr : gamma.real_pos) {
        std::string tag = "orbit-module " + rr.root.str();
        LatticeVector v =
            LatticeVector::basis(fm.rank_q(), fm.orbits().reps[static_cast<size_t>(rr.simple)]);
        for (int o : rr.word) v = fm.composite_reflection(o, v);
        auto it = by_dim.find(v.c);
        if (it == by_dim.end()) {
            rep.checks.checks.push_back(
                {tag, false, "transported vector " + v.str() + " is not a positive root of the base quiver"});
            continue;
        }
        SigmaModule s = sigma_module(fm.act, indec[it->second], seed);
        LatticeVector dm = s.module.dim_vector();
        std::ostringstream why;
        bool ok = true;
        if (!fm.g_fixed(dm)) {
            ok = false;
            why << "dim Sigma(N) = " << dm.str() << " is not orbit-constant; ";
        } else if (fm.f(dm) != rr.root) {
            ok = false;
            why << "f(dim Sigma(N)) = " << fm.f(dm).str() << " != " << rr.root.str() << "; ";
        }
        if (!s.invariant) {
            ok = false;
            why << "Sigma(N) is not invariant under the generators; ";
        }
        long long halfnorm = fm.form_q.pair(dm, dm) / 2;
        long long count = static_cast<long long>(s.coset_reps.size());
        if (halfnorm != count) {
            ok = false;
            why << "half-norm " << halfnorm << " != " << count << " summands; ";
        }
        rep.checks.checks.push_back({tag, ok, ok ? "" : why.str()});
        rep.gamma_roots.push_back(rr.root);
        rep.summand_counts.push_back(count);
    }
    return rep;
}

}  // namespace quiverfold
