#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace quiverfold {

// Dense integer matrix, row major.  Sizes in this engine stay tiny (the
// number of group generators or vertex orbits), so int64 entries suffice;
// Smith reduction only ever shrinks entries below the initial magnitudes'
// products, which our callers keep far from overflow.
struct IntMat {
    int rows = 0, cols = 0;
    std::vector<long long> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    long long& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    long long at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    IntMat mul(const IntMat& o) const {
        if (cols != o.rows) throw std::invalid_argument("IntMat::mul: shape mismatch");
        IntMat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                long long v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    std::string str() const {
        std::string s;
        for (int i = 0; i < rows; ++i) {
            s += "[";
            for (int j = 0; j < cols; ++j) s += (j ? " " : "") + std::to_string(at(i, j));
            s += "]\n";
        }
        return s;
    }
};

// Determinant by fraction-free expansion; fine for the small square
// matrices (unimodular transforms) we need to certify.
inline long long int_det(const IntMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("int_det: not square");
    int n = m.rows;
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[i][j] = rat(m.at(i, j));
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (!is_zero(w[r][c])) { p = r; break; }
        if (p < 0) return 0;
        if (p != c) { std::swap(w[p], w[c]); det = -det; }
        det *= w[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (is_zero(w[r][c])) continue;
            Rational f = w[r][c] / w[c][c];
            for (int j = c; j < n; ++j) w[r][j] -= f * w[c][j];
        }
    }
    return to_ll(det);
}

struct SmithResult {
    IntMat u;  // rows x rows, unimodular
    IntMat d;  // rows x cols, diagonal with d1 | d2 | ...
    IntMat v;  // cols x cols, unimodular
};

// Smith normal form with transforms: u * m * v == d, diagonal entries
// nonnegative and each dividing the next.
inline SmithResult smith_normal_form(const IntMat& m) {
    SmithResult s{IntMat::identity(m.rows), m, IntMat::identity(m.cols)};
    IntMat& d = s.d;
    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < s.u.cols; ++c) std::swap(s.u.at(i, c), s.u.at(j, c));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < s.v.rows; ++r) std::swap(s.v.at(r, i), s.v.at(r, j));
    };
    auto add_row = [&](int dst, int src, long long f) {  // row dst += f * row src
        for (int c = 0; c < d.cols; ++c) d.at(dst, c) += f * d.at(src, c);
        for (int c = 0; c < s.u.cols; ++c) s.u.at(dst, c) += f * s.u.at(src, c);
    };
    auto add_col = [&](int dst, int src, long long f) {
        for (int r = 0; r < d.rows; ++r) d.at(r, dst) += f * d.at(r, src);
        for (int r = 0; r < s.v.rows; ++r) s.v.at(r, dst) += f * s.v.at(r, src);
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < s.u.cols; ++c) s.u.at(i, c) = -s.u.at(i, c);
    };

    int t = 0;
    while (t < d.rows && t < d.cols) {
        // Locate minimal-magnitude nonzero pivot in the trailing block.
        int pi = -1, pj = -1;
        for (int i = t; i < d.rows; ++i)
            for (int j = t; j < d.cols; ++j)
                if (d.at(i, j) != 0 &&
                    (pi < 0 || std::llabs(d.at(i, j)) < std::llabs(d.at(pi, pj)))) {
                    pi = i; pj = j;
                }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < d.rows; ++i) {
                if (d.at(i, t) == 0) continue;
                long long q = d.at(i, t) / d.at(t, t);
                add_row(i, t, -q);
                if (d.at(i, t) != 0) { swap_rows(t, i); dirty = true; }
            }
            for (int j = t + 1; j < d.cols; ++j) {
                if (d.at(t, j) == 0) continue;
                long long q = d.at(t, j) / d.at(t, t);
                add_col(j, t, -q);
                if (d.at(t, j) != 0) { swap_cols(t, j); dirty = true; }
            }
        }
        if (d.at(t, t) < 0) negate_row(t);

        // Enforce divisibility of the remaining block by the pivot.
        bool again = false;
        for (int i = t + 1; i < d.rows && !again; ++i)
            for (int j = t + 1; j < d.cols && !again; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    add_row(t, i, 1);
                    again = true;
                }
        if (again) continue;  // redo pivot at same t
        ++t;
    }
    return s;
}

// Inverse of a unimodular integer matrix, exact and integral.
inline IntMat unimodular_inverse(const IntMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("unimodular_inverse: not square");
    int n = m.rows;
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w[i][j] = rat(m.at(i, j));
        w[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (!is_zero(w[r][c])) { p = r; break; }
        if (p < 0) throw std::invalid_argument("unimodular_inverse: singular");
        std::swap(w[p], w[c]);
        Rational f = w[c][c];
        for (int j = 0; j < 2 * n; ++j) w[c][j] /= f;
        for (int r = 0; r < n; ++r) {
            if (r == c || is_zero(w[r][c])) continue;
            Rational g = w[r][c];
            for (int j = 0; j < 2 * n; ++j) w[r][j] -= g * w[c][j];
        }
    }
    IntMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!is_integer(w[i][n + j]))
                throw std::invalid_argument("unimodular_inverse: input was not unimodular");
            inv.at(i, j) = to_ll(w[i][n + j]);
        }
    return inv;
}

}  // namespace quiverfold
