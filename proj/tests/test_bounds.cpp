#include "doctest.h"
#include "support.hpp"

#include <cmath>
#include <gmpxx.h>

#include "smoothpoly/bounds.hpp"

using namespace smoothpoly;

namespace {

// γ at u = 1, g = 1 evaluated with 256-bit floats.
double gamma_reference(unsigned d)
{
    mpf_class a(3, 256);
    a /= 16 * d;
    mpf_class root(0, 256);
    mpf_class inner = a + a * a;
    mpf_sqrt(root.get_mpf_t(), inner.get_mpf_t());
    mpf_class half(0.5, 256);
    return mpf_class(half + a + root).get_d();
}

}  // namespace

TEST_CASE("gamma closed form")
{
    const long double exact = (19 + std::sqrt(105.0L)) / 32;
    CHECK(std::abs(gamma_f(2, 1, 1) - exact) < 1e-15L);
    CHECK(std::abs(gamma_f(2, 1, 1) - 0.913967) < 1e-6L);
    CHECK(std::abs(gamma_f(4, 1, 1) - 0.768397) < 1e-6L);
    CHECK(std::abs(static_cast<double>(gamma_f(4, 1, 1)) - gamma_reference(4)) < 1e-14);
    // The excess over 1/2 decays like sqrt((2g+1)/(16du)).
    const long double excess = gamma_f(2, 1, 1e6) - 0.5L;
    CHECK(std::abs(excess - std::sqrt(3.0L / 32e6L)) < 1e-7L);
    CHECK(gamma_f(2, 1, 1e12) - 0.5L < 1e-5L);
    CHECK_THROWS_AS(gamma_f(1, 1, 1), DomainError);
    CHECK_THROWS_AS(gamma_f(3, 4, 1), DomainError);
    CHECK_THROWS_AS(gamma_f(3, 1, 0.5), DomainError);
}

TEST_CASE("gamma monotone and bounded on a grid")
{
    const long double cap = (19 + std::sqrt(105.0L)) / 32;
    for (unsigned d = 2; d <= 10; ++d)
        for (unsigned g = 1; g <= d; ++g)
            for (long double u = 1; u <= 10; u += 0.25L) {
                const long double gam = gamma_f(d, g, u);
                const long double a = (2.0L * g + 1) / (16.0L * d * u);
                CHECK(gam > 0);
                if (u + 0.25L <= 10) CHECK(gamma_f(d, g, u + 0.25L) < gam);
                if (d < 10 && g <= d + 1) CHECK(gamma_f(d + 1, g, u) < gam);
                if (g < d) {
                    CHECK(gamma_f(d, g + 1, u) > gam);
                    CHECK(a < 0.125L);
                    CHECK(gam < 1);
                }
                if (g == 1) CHECK(gam <= cap + 1e-18L);
            }
}

TEST_CASE("main term and comparators")
{
    auto f = testing::poly("t^2+1");
    CHECK(std::abs(thm11_main_term(f, 1e6L, 1) - 456983.5L) < 1.0L);
    CHECK_THROWS_AS(thm11_main_term(testing::poly("t"), 1e6L, 1), DomainError);

    CHECK(timofeev_coefficient(2, 1, 1, 0) == doctest::Approx(0.5));
    CHECK(thm11_coefficient(2, 1, 1) / timofeev_coefficient(2, 1, 1, 0) == doctest::Approx(0.913967).epsilon(1e-6));
    CHECK(std::abs(timofeev_coefficient(3, 2, 2, 0.1L) - 0.18375L) < 1e-15L);
    CHECK(std::abs(hmyrova_coefficient(std::exp(1.0L)) - 1) < 1e-15L);
}

TEST_CASE("density coefficient")
{
    CHECK(std::abs(cassels_coeff(2) - 0.5430164L) < 1e-7L);
    CHECK(cassels_coeff(2) > 0.543L);
    CHECK(std::abs(cassels_coeff(3) - 0.726602L) < 1e-6L);
    CHECK(cassels_coeff(1000000) > 0.999999L);
    for (unsigned d = 2; d <= 100; ++d) CHECK(std::abs(cassels_coeff(d) - (1 - gamma_f(d, 1, 1) / d)) < 1e-12L);
    CHECK_THROWS_AS(cassels_coeff(1), DomainError);
}

TEST_CASE("report")
{
    auto r = bound_report(2, 1, 1.5L, 0.1L, 1e6L);
    CHECK(r.m == 1);
    CHECK(r.hmyrova_applies);
    REQUIRE(r.cassels);
    CHECK(r.outside_theorem_range);
    CHECK(r.thm11 > 0);
    CHECK(r.timofeev > 0);
    CHECK_FALSE(bound_report(3, 2, 1).cassels);
}
