#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "action.hpp"
#include "cyclotomic.hpp"
#include "quiver.hpp"

namespace quiverfold {

// Path of Q stored in traversal order: arrows[0] leaves src, arrows.back()
// enters tgt. Empty arrow list = the idempotent path e_src (src == tgt).
struct Path {
    int src;
    int tgt;
    std::vector<int> arrows;

    bool is_vertex() const { return arrows.empty(); }
    friend bool operator<(const Path& a, const Path& b) {
        if (a.src != b.src) return a.src < b.src;
        if (a.tgt != b.tgt) return a.tgt < b.tgt;
        return a.arrows < b.arrows;
    }
    friend bool operator==(const Path& a, const Path& b) {
        return a.src == b.src && a.tgt == b.tgt && a.arrows == b.arrows;
    }
};

inline Path vertex_path(int v) { return Path{v, v, {}}; }
inline Path arrow_path(const Quiver& q, int arrow) {
    return Path{q.arrows[arrow].src, q.arrows[arrow].tgt, {arrow}};
}

// Element of the skew group algebra kQ * G over Q(zeta_level):
// finite sum of coeff * (path tensor group element).
using SkewKey = std::pair<Path, GroupElt>;
using SkewElement = std::map<SkewKey, Cyc>;

// Context fixing (Q, action, engine level). The engine level is a common
// multiple of the action's scalar level and the group exponent, so both
// action scalars and character values live in one field.
class SkewAlgebra {
  public:
    SkewAlgebra(const Quiver& q, const MonomialAction& act)
        : q_(&q), act_(&act), level_(ll_lcm(act.level, std::max<long long>(act.group.exponent(), 1))) {}

    const Quiver& quiver() const { return *q_; }
    const MonomialAction& action() const { return *act_; }
    long long level() const { return level_; }

    Cyc scalar(const Rational& r) const { return Cyc::rational(r, level_); }
    Cyc root(long long k) const { return Cyc::root(level_, k); }

    SkewElement term(const Path& p, const GroupElt& g, const Cyc& c) const {
        SkewElement e;
        if (!quiverfold::is_zero(c)) e[{p, act_->group.reduce(g)}] = c;
        return e;
    }
    SkewElement vertex_term(int v) const {
        return term(vertex_path(v), act_->group.identity(), root(0));
    }
    SkewElement arrow_term(int arrow, const GroupElt& g) const {
        return term(arrow_path(*q_, arrow), g, root(0));
    }

    static SkewElement add(const SkewElement& a, const SkewElement& b) {
        SkewElement out = a;
        for (const auto& [k, c] : b) {
            auto it = out.find(k);
            if (it == out.end()) out[k] = c;
            else {
                it->second = it->second + c;
                if (quiverfold::is_zero(it->second)) out.erase(it);
            }
        }
        return out;
    }

    static SkewElement scale(const Cyc& c, const SkewElement& a) {
        SkewElement out;
        if (quiverfold::is_zero(c)) return out;
        for (const auto& [k, v] : a) out[k] = c * v;
        return out;
    }

    // Action of g on a path: each arrow is moved by the monomial action and
    // scalars accumulate. Returns (scalar exponent at engine level, image path).
    std::pair<long long, Path> act_path(const GroupElt& g, const Path& p) const {
        long long lift = level_ / act_->level;
        if (p.is_vertex()) return {0, vertex_path(act_vertex(*act_, g, p.src))};
        long long e = 0;
        std::vector<int> imgs;
        imgs.reserve(p.arrows.size());
        for (int a : p.arrows) {
            auto [img, k] = act_arrow(*act_, g, a);
            imgs.push_back(img);
            e = mod_nonneg(e + k * lift, level_);
        }
        Path out{act_vertex(*act_, g, p.src), act_vertex(*act_, g, p.tgt), imgs};
        return {e, out};
    }

    // Path composition "q after p": traverse p, then traverse r. Nonzero only
    // when src(r) = tgt(p).
    static bool compose_paths(const Path& r, const Path& p, Path& out) {
        if (r.src != p.tgt) return false;
        out.src = p.src;
        out.tgt = r.tgt;
        out.arrows = p.arrows;
        out.arrows.insert(out.arrows.end(), r.arrows.begin(), r.arrows.end());
        return true;
    }

    // (r tensor g)(p tensor g') = r . g(p) tensor g+g'
    SkewElement mul(const SkewElement& a, const SkewElement& b) const {
        SkewElement out;
        for (const auto& [ka, ca] : a)
            for (const auto& [kb, cb] : b) {
                const auto& [r, g] = ka;
                const auto& [p, g2] = kb;
                auto [e, gp] = act_path(g, p);
                Path comp;
                if (!compose_paths(r, gp, comp)) continue;
                Cyc c = ca * cb * root(e);
                SkewKey key{comp, act_->group.add(g, g2)};
                auto it = out.find(key);
                if (it == out.end()) out[key] = c;
                else it->second = it->second + c;
            }
        for (auto it = out.begin(); it != out.end();) {
            if (quiverfold::is_zero(it->second)) it = out.erase(it);
            else ++it;
        }
        return out;
    }

    // Value of the character chi of the subgroup H at ambient element x,
    // as a root of unity at the engine level.
    Cyc subchar_value(const Subgroup& h, const SubChar& chi, const GroupElt& x) const {
        return root(subchar_eval(h, chi, x, level_));
    }

    // Primitive orthogonal idempotent e_(v, chi) for a vertex v with
    // stabilizer H: (1/|H|) sum_h chi(h) (e_v tensor h).
    SkewElement vertex_idempotent(int v, const Subgroup& h, const SubChar& chi) const {
        SkewElement out;
        Cyc inv = scalar(Rational(1) / Rational(static_cast<long>(h.order())));
        for (const GroupElt& x : h.all_elements()) {
            Cyc c = inv * subchar_value(h, chi, x);
            if (!quiverfold::is_zero(c)) out[{vertex_path(v), act_->group.reduce(x)}] = c;
        }
        return out;
    }

    // Dual action of g: multiply the coefficient at (path, h) by chi_g(h),
    // the duality pairing at the group exponent, lifted to the engine level.
    SkewElement dual_act(const GroupElt& g, const SkewElement& a) const {
        const AbelianGroup& grp = act_->group;
        long long ex = std::max<long long>(grp.exponent(), 1);
        long long lift = level_ / ex;
        SkewElement out;
        for (const auto& [k, c] : a) {
            long long p = pairing(grp, g, k.second);
            Cyc v = c * root(mod_nonneg(p * lift, level_));
            if (!quiverfold::is_zero(v)) out[k] = v;
        }
        return out;
    }

    static bool equal(const SkewElement& a, const SkewElement& b) {
        SkewElement d = add(a, scale(Cyc(-1), b));
        return d.empty();
    }

    std::string str(const SkewElement& a) const {
        if (a.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : a) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")*";
            if (k.first.is_vertex()) os << "e_" << q_->vertex_names[k.first.src];
            else {
                for (size_t t = k.first.arrows.size(); t-- > 0;)
                    os << q_->arrow_names[k.first.arrows[t]] << (t > 0 ? "." : "");
            }
            os << "|" << group_elt_to_string(k.second);
        }
        return os.str();
    }

  private:
    const Quiver* q_;
    const MonomialAction* act_;
    long long level_;
};

}  // namespace quiverfold
