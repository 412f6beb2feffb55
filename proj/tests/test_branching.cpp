#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypcyl/branching.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

using namespace hypcyl;

TEST_CASE("catalan triangle: base cases and recursion vs closed form") {
    const CatalanTriangle t(50);
    CHECK(t.at(0, 0) == 1);
    CHECK(t.at(0, 1) == 1);
    CHECK(t.at(1, 1) == 1);
    CHECK(catalan(1, 3) == 5);
    for (int n = 0; n <= 50; ++n) {
        CHECK(t.at(n, n) == 1);
        for (int k = 0; k <= n; ++k) CHECK(t.at(k, n) == catalan(k, n));
    }
}

TEST_CASE("catalan triangle identities and 4^n bound") {
    const CatalanTriangle t(50);
    for (int n = 1; n <= 50; ++n) {
        const BigInt bound = boost::multiprecision::pow(BigInt(4), n);
        for (int k = 0; k <= n; ++k) {
            CHECK(t.at(k, n) <= bound);
            // c_{k,n} = c_{k-1,n-1} + c_{k+1,n}, with c_{-1,.} = c_{n+1,n} = 0.
            const BigInt left = k >= 1 ? t.at(k - 1, n - 1) : BigInt(0);
            const BigInt right = k + 1 <= n ? t.at(k + 1, n) : BigInt(0);
            CHECK(t.at(k, n) == left + right);
        }
    }
}

TEST_CASE("g polynomials") {
    const ExpPolynomial g0 = g_poly(0);
    CHECK(g0.degree() == 0);
    CHECK(g0.coeffs[0] == 1);

    const ExpPolynomial g1 = g_poly(1);  // x + 1
    CHECK(g1.coeffs[0] == 1);
    CHECK(g1.coeffs[1] == 1);

    CHECK(g_poly(2).eval(2.0) == doctest::Approx(8.0).epsilon(1e-14));

    // Compensated double evaluation tracks exact rational evaluation.
    for (int n : {10, 30, 60}) {
        const ExpPolynomial g = g_poly(n);
        for (double x : {0.5, 7.0, 50.0}) {
            const double exact = static_cast<double>(g.eval_exact(BigRat(x)));
            CHECK(g.eval(x) == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("operator T reproduces the g recursion exactly") {
    ExpPolynomial cur = g_poly(0);
    for (int n = 0; n < 20; ++n) {
        cur = apply_T(cur);
        CHECK(cur == g_poly(n + 1));
    }
}

TEST_CASE("operator T eigenfunction (x+2)e^{x/2}") {
    const ExpPolynomial g = eigenfunction_x2exp();
    const ExpPolynomial tg = apply_T(g);
    // Coefficientwise equality with 4g: the polynomial residue cancels exactly.
    ExpPolynomial four_g = g;
    four_g.c_exp *= 4;
    four_g.c_xexp *= 4;
    CHECK(tg == four_g);

    // Independent check by quadrature at a few points.
    for (double x : {0.5, 2.0}) {
        auto integrand_head = [&](double y) { return g.eval(y); };
        auto integrand_tail = [&](double y) { return std::exp(x - y) * g.eval(y); };
        const double head = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand_head, 0.0, x, 12, 1e-12);
        const double tail = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand_tail, x, x + 80.0, 12, 1e-12);
        CHECK(head + tail == doctest::Approx(4.0 * g.eval(x)).epsilon(1e-9));
    }
}

TEST_CASE("f_n and F_n closed forms") {
    CHECK(f_n(1, 5.0, 0.3) == doctest::Approx(0.3).epsilon(1e-14));  // g_0 = 1
    CHECK(f_n(2, 2.0, 0.1) == doctest::Approx(0.03).epsilon(1e-14));  // u^2 g_1(2)
    CHECK(f_n(3, 1.0, 0.0) == 0.0);

    CHECK(F_n(1, 2.0, 0.1) == doctest::Approx(0.2).epsilon(1e-14));  // uR
    CHECK(F_n(2, 2.0, 0.1) == doctest::Approx(0.04).epsilon(1e-14));
    CHECK(F_n(3, 2.0, 0.1) == doctest::Approx(0.001 * 28.0 / 3.0).epsilon(1e-14));

    // F_n(R, u) = u^n F_n(R, 1).
    for (int n : {1, 2, 5, 9}) {
        CHECK(F_n(n, 1.5, 0.2) ==
              doctest::Approx(std::pow(0.2, n) * F_n(n, 1.5, 1.0)).epsilon(1e-12));
    }

    // log-space path agrees with the exact path where both apply.
    for (int n : {1, 5, 20, 55}) {
        const double exact = F_n(n, 2.0, 0.1);
        CHECK(std::exp(log_F_n(n, 2.0, 0.1)) == doctest::Approx(exact).epsilon(1e-10));
        CHECK(std::exp(log_f_n(n, 2.0, 0.1)) == doctest::Approx(f_n(n, 2.0, 0.1)).epsilon(1e-10));
    }
}

TEST_CASE("subcritical bound dominates partial sums") {
    CHECK(subcritical_bound(0.0, 0.2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(subcritical_bound(0.0, 1e-9) < 1e-8);
    CHECK_THROWS_AS(subcritical_bound(1.0, 0.25), std::invalid_argument);

    for (double x = 0.0; x <= 10.0; x += 1.0) {
        double partial = 0.0;
        for (int n = 1; n <= 200; ++n) {
            partial += n - 1 <= kExactTableDepth ? f_n(n, x, 0.2) : std::exp(log_f_n(n, x, 0.2));
        }
        CHECK(partial <= subcritical_bound(x, 0.2));
    }
}

TEST_CASE("supercritical lower bound") {
    // Valid lower bound for F_{n+1}(1) at u = 0.3, checked in log space.
    for (int n = 0; n <= 60; ++n) {
        CHECK(log_F_n(n + 1, 1.0, 0.3) >= log_supercritical_lower(n, 1.0, 0.3) - 1e-12);
    }
    // Grows linearly in n at rate log(4u) = log 1.2.
    const double r1 = log_supercritical_lower(40, 1.0, 0.3);
    const double r2 = log_supercritical_lower(41, 1.0, 0.3);
    CHECK(r2 - r1 == doctest::Approx(std::log(1.2)).epsilon(0.05));
    // At u = 1/4 the bound tends to zero: no divergence certified.
    CHECK(supercritical_lower(200, 1.0, 0.25) < 1e-5);
}

TEST_CASE("phase dichotomy in expectation") {
    // u = 0.2: the F series is summable under the closed bound.
    double total = 0.0;
    for (int n = 1; n <= 200; ++n)
        total += n - 1 <= kExactTableDepth ? F_n(n, 1.0, 0.2) : std::exp(log_F_n(n, 1.0, 0.2));
    CHECK(total < sum_F_subcritical_bound(1.0, 0.2));

    // u = 0.3: F_n(1) passes any fixed threshold.
    bool exceeded = false;
    for (int n = 1; n <= 200 && !exceeded; ++n)
        exceeded = log_F_n(n, 1.0, 0.3) > std::log(1e6);
    CHECK(exceeded);

    CHECK(criticality_label(0.2) == "subcritical");
    CHECK(criticality_label(0.3) == "supercritical");
    CHECK(criticality_label(0.25) == "critical (no claim)");
}
