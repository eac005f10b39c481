#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace quiverfold {

// Dense linear algebra over an exact field T (Rational or Cyc).  T must
// provide +,-,*,/ and an ADL-visible is_zero(t).  Everything here is plain
// Gaussian elimination; problem sizes are bounded by the dimension of the
// Lie algebras we build (a few dozen), so clarity beats cleverness.
template <typename T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}

    T& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }

    Mat mul(const Mat& o) const {
        if (cols != o.rows) throw std::invalid_argument("Mat::mul shape");
        Mat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const T& v = at(i, k);
                if (is_zero(v)) continue;
                for (int j = 0; j < o.cols; ++j) r.at(i, j) = r.at(i, j) + v * o.at(k, j);
            }
        return r;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        if (static_cast<int>(x.size()) != cols) throw std::invalid_argument("Mat::apply shape");
        std::vector<T> y(rows, T(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!is_zero(at(i, j))) y[i] = y[i] + at(i, j) * x[j];
        return y;
    }

    bool operator==(const Mat& o) const {
        if (rows != o.rows || cols != o.cols) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!is_zero(a[i] - o.a[i])) return false;
        return true;
    }
};

// In-place reduced row echelon form; returns pivot column per pivot row.
template <typename T>
std::vector<int> rref(Mat<T>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (!is_zero(m.at(i, c))) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        T inv = T(1) / m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || is_zero(m.at(i, c))) continue;
            T f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename T>
int rank(Mat<T> m) {
    return static_cast<int>(rref(m).size());
}

// Basis of the right null space {x : m x = 0}, one row per basis vector.
template <typename T>
Mat<T> nullspace(Mat<T> m) {
    std::vector<int> piv = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    Mat<T> basis(static_cast<int>(free_cols.size()), m.cols);
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(static_cast<int>(k), fc) = T(1);
        for (size_t r = 0; r < piv.size(); ++r)
            basis.at(static_cast<int>(k), piv[r]) = T(0) - m.at(static_cast<int>(r), fc);
    }
    return basis;
}

// Solve m x = b; empty optional when inconsistent.  m is passed by value.
template <typename T>
std::optional<std::vector<T>> solve(Mat<T> m, std::vector<T> b) {
    if (static_cast<int>(b.size()) != m.rows) throw std::invalid_argument("solve shape");
    Mat<T> aug(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    std::vector<int> piv = rref(aug);
    for (int c : piv)
        if (c == m.cols) return std::nullopt;
    std::vector<T> x(m.cols, T(0));
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<int>(r), m.cols);
    return x;
}

// Row-space membership test: is v in the span of the rows of basis?
template <typename T>
bool in_row_space(const Mat<T>& basis, const std::vector<T>& v) {
    Mat<T> t(basis.cols, basis.rows);
    for (int i = 0; i < basis.rows; ++i)
        for (int j = 0; j < basis.cols; ++j) t.at(j, i) = basis.at(i, j);
    return solve(t, v).has_value();
}

// Express v in the row basis (rows assumed independent); empty if outside.
template <typename T>
std::optional<std::vector<T>> coords_in_row_basis(const Mat<T>& basis, const std::vector<T>& v) {
    Mat<T> t(basis.cols, basis.rows);
    for (int i = 0; i < basis.rows; ++i)
        for (int j = 0; j < basis.cols; ++j) t.at(j, i) = basis.at(i, j);
    return solve(t, v);
}

// Intersection of two row spaces, as a row-basis matrix.
template <typename T>
Mat<T> row_space_intersection(const Mat<T>& a, const Mat<T>& b) {
    // x in both spans  <=>  x = ya A = yb B; solve [A^T | -B^T] kernel.
    Mat<T> sys(a.cols, a.rows + b.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) sys.at(j, i) = a.at(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) sys.at(j, a.rows + i) = T(0) - b.at(i, j);
    Mat<T> ker = nullspace(sys);
    Mat<T> out(ker.rows, a.cols);
    for (int k = 0; k < ker.rows; ++k)
        for (int j = 0; j < a.cols; ++j) {
            T s(0);
            for (int i = 0; i < a.rows; ++i) s = s + ker.at(k, i) * a.at(i, j);
            out.at(k, j) = s;
        }
    Mat<T> red = out;
    std::vector<int> piv = rref(red);
    Mat<T> basis(static_cast<int>(piv.size()), a.cols);
    for (size_t r = 0; r < piv.size(); ++r)
        for (int j = 0; j < a.cols; ++j) basis.at(static_cast<int>(r), j) = red.at(static_cast<int>(r), j);
    return basis;
}

// Canonical row basis (rref rows with zero rows dropped).
template <typename T>
Mat<T> row_basis(Mat<T> m) {
    std::vector<int> piv = rref(m);
    Mat<T> b(static_cast<int>(piv.size()), m.cols);
    for (size_t r = 0; r < piv.size(); ++r)
        for (int j = 0; j < m.cols; ++j) b.at(static_cast<int>(r), j) = m.at(static_cast<int>(r), j);
    return b;
}

}  // namespace quiverfold
