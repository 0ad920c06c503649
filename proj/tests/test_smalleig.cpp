#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rng.hpp"
#include "smalleig.hpp"

using conelab::Rng;
using conelab::sym2_eigenvalues;
using conelab::sym3_eigenvalues;
using conelab::sym_eigenvalues;

TEST_CASE("closed-form eigenvalues match hand values") {
    // diag(5) as a 1x1.
    const double one[1] = {5.0};
    CHECK(sym_eigenvalues(one, 1) == std::vector<double>{5.0});

    // [[2,1],[1,2]] has eigenvalues 1 and 3.
    const auto two = sym2_eigenvalues(2.0, 1.0, 2.0);
    CHECK(two[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(two[1] == doctest::Approx(3.0).epsilon(1e-14));

    // Tridiagonal [[2,-1,0],[-1,2,-1],[0,-1,2]]: 2 - sqrt(2), 2, 2 + sqrt(2).
    const auto three = sym3_eigenvalues(2.0, -1.0, 0.0, 2.0, -1.0, 2.0);
    CHECK(three[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
    CHECK(three[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(three[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("closed forms agree with Jacobi rotations on random matrices") {
    Rng rng(123);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + (trial % 2);
        std::vector<double> a(n * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double v = rng.uniform(-5.0, 5.0);
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        const std::vector<double> fast = sym_eigenvalues(a.data(), n);
        const std::vector<double> slow = oracle::jacobi_eigenvalues(a, n);
        REQUIRE(fast.size() == slow.size());
        double scale = 1.0;
        for (double v : slow) scale = std::max(scale, std::fabs(v));
        for (std::size_t i = 0; i < fast.size(); ++i)
            CHECK(std::fabs(fast[i] - slow[i]) <= 1e-12 * scale);
    }
}

TEST_CASE("near-degenerate pairs stay ordered and accurate") {
    // Eigenvalues 1 and 1 + 1e-9 via a rotation by 30 degrees.
    const double c = std::cos(0.5235987755982988), s = std::sin(0.5235987755982988);
    const double l1 = 1.0, l2 = 1.0 + 1e-9;
    const double a11 = c * c * l1 + s * s * l2;
    const double a22 = s * s * l1 + c * c * l2;
    const double a12 = c * s * (l2 - l1);
    const auto eig = sym2_eigenvalues(a11, a12, a22);
    CHECK(eig[0] <= eig[1]);
    CHECK(eig[0] == doctest::Approx(l1).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(l2).epsilon(1e-12));
}
