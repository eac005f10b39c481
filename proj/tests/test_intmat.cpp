#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quiverfold/intmat.hpp"

using namespace quiverfold;

namespace {

// Oracle for 2x2 Smith forms: d1 = gcd of all entries, d1*d2 = |det|.
void check_2x2_against_gcd_det(const IntMat& m, long long want_d1, long long want_d2) {
    long long g = 0;
    for (long long v : m.a) g = ll_gcd(g, v);
    long long det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    REQUIRE(g == want_d1);
    REQUIRE(want_d1 * want_d2 == std::abs(det));

    SmithResult s = smith_normal_form(m);
    REQUIRE(s.d.at(0, 0) == want_d1);
    REQUIRE(s.d.at(1, 1) == want_d2);
}

void check_smith_contract(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    IntMat umv = s.u.mul(m).mul(s.v);
    REQUIRE(umv == s.d);
    REQUIRE(std::abs(int_det(s.u)) == 1);
    REQUIRE(std::abs(int_det(s.v)) == 1);
    int r = std::min(m.rows, m.cols);
    for (int i = 0; i < r; ++i) {
        REQUIRE(s.d.at(i, i) >= 0);
        for (int j = 0; j < s.d.cols; ++j)
            if (j != i && i < s.d.rows) REQUIRE(s.d.at(i, j) == 0);
        if (i + 1 < r && s.d.at(i, i) != 0)
            REQUIRE(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
        if (i + 1 < r && s.d.at(i, i) == 0) REQUIRE(s.d.at(i + 1, i + 1) == 0);
    }
}

}  // namespace

TEST_CASE("smith normal form on the 2x2 identity") {
    IntMat m = IntMat::identity(2);
    SmithResult s = smith_normal_form(m);
    REQUIRE(s.d == IntMat::identity(2));
    check_smith_contract(m);
}

TEST_CASE("smith normal form of diag(2,3) is diag(1,6)") {
    IntMat m(2, 2);
    m.at(0, 0) = 2;
    m.at(1, 1) = 3;
    check_2x2_against_gcd_det(m, 1, 6);
    check_smith_contract(m);
}

TEST_CASE("smith normal form of [[4,6],[2,2]] is diag(2,2)") {
    IntMat m(2, 2);
    m.at(0, 0) = 4;
    m.at(0, 1) = 6;
    m.at(1, 0) = 2;
    m.at(1, 1) = 2;
    check_2x2_against_gcd_det(m, 2, 2);
    check_smith_contract(m);
}

TEST_CASE("smith normal form contract on random matrices") {
    std::mt19937_64 rng(20260817);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 4);
        int cols = 1 + static_cast<int>(rng() % 4);
        IntMat m(rows, cols);
        for (long long& v : m.a) v = static_cast<long long>(rng() % 13) - 6;
        check_smith_contract(m);
    }
}

TEST_CASE("unimodular inverse") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        // build a unimodular matrix from random elementary row operations
        int n = 2 + static_cast<int>(rng() % 3);
        IntMat u = IntMat::identity(n);
        for (int step = 0; step < 8; ++step) {
            int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
            if (i == j) continue;
            long long f = static_cast<long long>(rng() % 5) - 2;
            for (int c = 0; c < n; ++c) u.at(i, c) += f * u.at(j, c);
        }
        IntMat inv = unimodular_inverse(u);
        REQUIRE(u.mul(inv) == IntMat::identity(n));
        REQUIRE(inv.mul(u) == IntMat::identity(n));
    }
}

TEST_CASE("integer determinant") {
    IntMat m(3, 3);
    long long vals[9] = {2, -1, 0, -1, 2, -1, 0, -1, 2};
    for (int i = 0; i < 9; ++i) m.a[i] = vals[i];
    REQUIRE(int_det(m) == 4);  // Cartan determinant of the path graph on 3 vertices
    REQUIRE(int_det(IntMat::identity(4)) == 1);
}
