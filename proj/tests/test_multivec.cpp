#include "doctest.h"

#include <random>

#include "bgx/multivec.hpp"

using namespace bgx;

namespace {

Multivector e(int n, std::initializer_list<int> idx, cplx c = 1.0) {
    return Multivector::from_blade(n, Blade::from_indices(idx), c);
}

Multivector random_mv(int n, int p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Multivector m(n, p);
    for (const Blade& b : basis_blades(n, p)) m.add(b, cplx(U(rng), U(rng)));
    return m;
}

}  // namespace

TEST_CASE("wedge basics") {
    const Multivector e1 = Multivector::basis(3, 1), e2 = Multivector::basis(3, 2);
    CHECK((wedge(e1, e2) - e(3, {1, 2})).is_zero());
    CHECK(wedge(e1, e1).is_zero());
    CHECK((wedge(e1 + e2, e2) - e(3, {1, 2})).is_zero());
    CHECK((wedge(e2, e1) + e(3, {1, 2})).is_zero());
    CHECK_THROWS(wedge(e(3, {1, 2}), e(3, {1, 3})));
    CHECK_THROWS(wedge(e1, Multivector::basis(4, 1)));
}

TEST_CASE("wedge is associative") {
    std::mt19937_64 rng(3);
    const auto a = random_mv(5, 1, rng), b = random_mv(5, 2, rng), c = random_mv(5, 1, rng);
    CHECK((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).max_abs() < 1e-14);
}

TEST_CASE("eps and iota examples") {
    CHECK((eps_e(1, Multivector::basis(3, 2)) - e(3, {1, 2})).is_zero());
    CHECK(eps_e(1, Multivector::basis(3, 1)).is_zero());
    const std::vector<double> x{1.0, 1.0, 0.0};
    CHECK((eps(x, Multivector::basis(3, 3)) - e(3, {1, 3}) - e(3, {2, 3})).is_zero());
    CHECK((iota_e(1, e(3, {1, 2})) - Multivector::basis(3, 2)).is_zero());
    CHECK((iota_e(2, e(3, {1, 2})) + Multivector::basis(3, 1)).is_zero());
    CHECK(iota_e(3, e(3, {1, 2})).is_zero());
}

TEST_CASE("comm_op examples") {
    const std::vector<double> y{1.0, 0.0, 0.0};
    CHECK((comm_op(y, Multivector::scalar(3, 1.0)) - Multivector::scalar(3, 1.0)).is_zero());
    CHECK((comm_op(y, Multivector::basis(3, 1)) + Multivector::basis(3, 1)).is_zero());
}

TEST_CASE("anticommutator is |y|^2 on every blade") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> N01;
    for (int n = 1; n <= 5; ++n)
        for (int p = 0; p <= n; ++p) {
            std::vector<double> y(n);
            double r2 = 0.0;
            for (auto& v : y) {
                v = N01(rng);
                r2 += v * v;
            }
            for (const Blade& b : basis_blades(n, p)) {
                const Multivector w = Multivector::from_blade(n, b);
                const Multivector s = iota(y, eps(y, w)) + eps(y, iota(y, w));
                CHECK((s - cplx(r2) * w).max_abs() < 1e-13);
            }
        }
}

TEST_CASE("adjointness of eps and iota") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int n = 2; n <= 5; ++n)
        for (int p = 0; p < n; ++p) {
            std::vector<cplx> x(n), xc(n);
            for (int k = 0; k < n; ++k) {
                x[k] = cplx(U(rng), U(rng));
                xc[k] = std::conj(x[k]);
            }
            const auto u = random_mv(n, p, rng), v = random_mv(n, p + 1, rng);
            CHECK(std::abs(inner(eps(x, u), v) - inner(u, iota(xc, v))) < 1e-13);
        }
}

TEST_CASE("comm_op is symmetric and bounded") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> N01;
    for (int p = 0; p <= 4; ++p) {
        std::vector<double> y(4);
        double r2 = 0.0;
        for (auto& v : y) {
            v = N01(rng);
            r2 += v * v;
        }
        const auto u = random_mv(4, p, rng), v = random_mv(4, p, rng);
        CHECK(std::abs(inner(comm_op(y, u), v) - inner(u, comm_op(y, v))) < 1e-12);
        const double q = inner(comm_op(y, u), u).real();
        const double nn = inner(u, u).real();
        CHECK(q <= r2 * nn + 1e-12);
        CHECK(q >= -r2 * nn - 1e-12);
    }
}

TEST_CASE("unit anticommutator is the identity") {
    const std::vector<double> u{0.6, 0.0, 0.8};
    for (int p = 0; p <= 3; ++p)
        for (const Blade& b : basis_blades(3, p)) {
            const auto w = Multivector::from_blade(3, b);
            CHECK((iota(u, eps(u, w)) + eps(u, iota(u, w)) - w).max_abs() < 1e-15);
        }
}

TEST_CASE("rotation generators") {
    CHECK((rot_gen(1, 2, Multivector::basis(3, 2)) - Multivector::basis(3, 1)).is_zero());
    CHECK(rot_gen(1, 2, Multivector::basis(3, 3)).is_zero());
    CHECK_THROWS(rot_gen(2, 1, Multivector::basis(3, 1)));
    // j, k = n reproduces -(i_{e_n} eps_{e_j} + eps_{e_n} i_{e_j})
    std::mt19937_64 rng(2);
    for (int p = 0; p <= 4; ++p) {
        const auto w = random_mv(4, p, rng);
        for (int j = 1; j < 4; ++j) {
            const auto lhs = rot_gen(j, 4, w);
            const auto rhs = -(iota_e(4, eps_e(j, w)) + eps_e(4, iota_e(j, w)));
            CHECK((lhs - rhs).max_abs() < 1e-14);
        }
    }
}

TEST_CASE("rotation generators are skew and antisymmetric") {
    std::mt19937_64 rng(9);
    for (int p = 0; p <= 4; ++p) {
        const auto u = random_mv(4, p, rng), v = random_mv(4, p, rng);
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 4; ++k) {
                CHECK((rot_gen_any(j, k, u) + rot_gen_any(k, j, u)).max_abs() < 1e-14);
                CHECK(std::abs(inner(rot_gen_any(j, k, u), v) + inner(u, rot_gen_any(j, k, v))) < 1e-13);
            }
    }
}

TEST_CASE("so(m) Casimir on Lambda^q") {
    for (int m = 2; m <= 5; ++m)
        for (int q = 0; q <= m; ++q)
            for (const Blade& b : basis_blades(m, q)) {
                const auto w = Multivector::from_blade(m, b);
                Multivector acc(m, q);
                for (int j = 1; j <= m; ++j)
                    for (int k = j + 1; k <= m; ++k) acc += rot_gen(j, k, rot_gen(j, k, w));
                CHECK((acc + cplx(double(q * (m - q))) * w).max_abs() < 1e-13);
            }
}

TEST_CASE("dense operator matches sparse action") {
    std::mt19937_64 rng(4);
    const auto D = dense_op(4, 2, 2, [](const Multivector& w) { return rot_gen(1, 3, w); });
    const auto u = random_mv(4, 2, rng);
    const auto dense = u.to_dense();
    std::vector<cplx> out(D.rows);
    D.apply(dense.data(), out.data());
    CHECK((Multivector::from_dense(4, 2, out) - rot_gen(1, 3, u)).max_abs() < 1e-15);
}
