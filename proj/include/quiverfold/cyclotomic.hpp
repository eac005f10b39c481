#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace quiverfold {

namespace polyq {

using Poly = std::vector<Rational>;  // coefficient c[k] of x^k; no trailing zeros

inline void trim(Poly& p) {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

inline Poly sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Division with remainder; divisor need not be monic.
inline std::pair<Poly, Poly> divmod(Poly num, const Poly& den) {
    if (den.empty()) throw std::invalid_argument("polyq::divmod: zero divisor");
    Poly q;
    while (degree(num) >= degree(den)) {
        int shift = degree(num) - degree(den);
        Rational f = num.back() / den.back();
        if (static_cast<int>(q.size()) < shift + 1) q.resize(shift + 1, Rational(0));
        q[shift] += f;
        for (size_t i = 0; i < den.size(); ++i) num[i + shift] -= f * den[i];
        trim(num);
    }
    trim(q);
    return {q, num};
}

}  // namespace polyq

namespace detail {

struct CycTable {
    long long level;
    polyq::Poly phi;  // minimal polynomial Phi_level, monic
    int deg;
};

// Phi_L computed by exact division of x^L - 1 by all proper Phi_d.
inline const CycTable& cyc_table(long long level) {
    static std::map<long long, std::unique_ptr<CycTable>> cache;
    auto it = cache.find(level);
    if (it != cache.end()) return *it->second;
    if (level < 1) throw std::invalid_argument("cyclotomic level must be >= 1");

    polyq::Poly p(level + 1, Rational(0));
    p[0] = Rational(-1);
    p[level] = Rational(1);
    for (long long d = 1; d < level; ++d) {
        if (level % d != 0) continue;
        auto [q, r] = polyq::divmod(p, cyc_table(d).phi);
        if (!r.empty()) throw std::logic_error("cyclotomic: inexact division");
        p = q;
    }
    auto tab = std::make_unique<CycTable>();
    tab->level = level;
    tab->phi = p;
    tab->deg = polyq::degree(p);
    const CycTable& ref = *tab;
    cache[level] = std::move(tab);
    return ref;
}

}  // namespace detail

// Element of Q(zeta_L), stored as a polynomial in zeta_L reduced mod Phi_L.
// Level 1 means a plain rational; binary operations promote level-1 values
// to the other operand's level, any other mismatch is an error (the engine
// fixes one global level per computation).
class Cyc {
  public:
    Cyc() : level_(1), c_(1, Rational(0)) {}
    explicit Cyc(int v) : level_(1), c_(1, Rational(v)) {}
    explicit Cyc(const Rational& v) : level_(1), c_(1, v) {}

    static Cyc rational(const Rational& v, long long level) {
        Cyc z = zero(level);
        z.c_[0] = v;
        z.reduce_against_phi();
        return z;
    }

    static Cyc zero(long long level) {
        Cyc z;
        z.level_ = level;
        z.c_.assign(static_cast<size_t>(detail::cyc_table(level).deg), Rational(0));
        return z;
    }

    // zeta_level^k
    static Cyc root(long long level, long long k) {
        k = mod_nonneg(k, level);
        polyq::Poly p(static_cast<size_t>(k) + 1, Rational(0));
        p[static_cast<size_t>(k)] = Rational(1);
        auto [q, r] = polyq::divmod(p, detail::cyc_table(level).phi);
        (void)q;
        Cyc z = zero(level);
        for (size_t i = 0; i < r.size(); ++i) z.c_[i] = r[i];
        return z;
    }

    long long level() const { return level_; }

    bool is_zero_value() const {
        for (const Rational& v : c_)
            if (!quiverfold::is_zero(v)) return false;
        return true;
    }

    bool is_rational_value() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!quiverfold::is_zero(c_[i])) return false;
        return true;
    }

    Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

    const std::vector<Rational>& coeffs() const { return c_; }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        auto [x, y] = promote(a, b);
        for (size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyc operator-(const Cyc& a, const Cyc& b) {
        auto [x, y] = promote(a, b);
        for (size_t i = 0; i < y.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    friend Cyc operator-(const Cyc& a) { return Cyc(0) - a; }
    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        auto [x, y] = promote(a, b);
        polyq::Poly pa(x.c_.begin(), x.c_.end());
        polyq::Poly pb(y.c_.begin(), y.c_.end());
        polyq::trim(pa);
        polyq::trim(pb);
        polyq::Poly prod = polyq::mul(pa, pb);
        auto [q, r] = polyq::divmod(prod, detail::cyc_table(x.level_).phi);
        (void)q;
        Cyc z = zero(x.level_);
        for (size_t i = 0; i < r.size(); ++i) z.c_[i] = r[i];
        return z;
    }
    friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

    friend bool operator==(const Cyc& a, const Cyc& b) { return (a - b).is_zero_value(); }

    // Inverse through the extended Euclidean algorithm against Phi_L,
    // which is irreducible over Q, so any nonzero element is a unit.
    Cyc inverse() const {
        if (is_zero_value()) throw std::invalid_argument("Cyc: division by zero");
        polyq::Poly a(c_.begin(), c_.end());
        polyq::trim(a);
        polyq::Poly b = detail::cyc_table(level_).phi;
        polyq::Poly s0{Rational(1)}, s1{};
        polyq::Poly r0 = a, r1 = b;
        while (!r1.empty()) {
            auto [q, r] = polyq::divmod(r0, r1);
            polyq::Poly s2 = polyq::sub(s0, polyq::mul(q, s1));
            r0 = r1; r1 = r;
            s0 = s1; s1 = s2;
        }
        if (polyq::degree(r0) != 0)
            throw std::logic_error("Cyc::inverse: gcd with Phi not constant");
        Rational lead = r0[0];
        Cyc z = zero(level_);
        auto [q2, rem] = polyq::divmod(s0, detail::cyc_table(level_).phi);
        (void)q2;
        for (size_t i = 0; i < rem.size(); ++i) z.c_[i] = rem[i] / lead;
        return z;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (quiverfold::is_zero(c_[i])) continue;
            if (!first) os << " + ";
            first = false;
            os << to_string(c_[i]);
            if (i >= 1) os << "*z" << level_ << (i > 1 ? "^" + std::to_string(i) : "");
        }
        if (first) os << "0";
        return os.str();
    }

  private:
    long long level_;
    std::vector<Rational> c_;

    void reduce_against_phi() {}

    static std::pair<Cyc, Cyc> promote(const Cyc& a, const Cyc& b) {
        if (a.level_ == b.level_) return {a, b};
        if (a.level_ == 1) {
            Cyc x = rational(a.c_[0], b.level_);
            return {x, b};
        }
        if (b.level_ == 1) {
            Cyc y = rational(b.c_[0], a.level_);
            return {a, y};
        }
        throw std::invalid_argument("Cyc: mixed cyclotomic levels");
    }
};

inline bool is_zero(const Cyc& c) { return c.is_zero_value(); }

}  // namespace quiverfold
