#include "doctest.h"

#include <cmath>
#include <vector>

#include "smoothpoly/dickman.hpp"

using namespace smoothpoly;

TEST_CASE("exact pieces")
{
    CHECK(rho(0.0) == 1.0);
    CHECK(rho(0.5) == 1.0);
    CHECK(rho(1.0) == 1.0);
    CHECK(rho(2.0) == doctest::Approx(1 - std::log(2.0)).epsilon(1e-15));
    for (double u = 1; u <= 2; u += 1.0 / 64) CHECK(std::abs(rho(u) - (1 - std::log(u))) < 1e-12);
    CHECK_THROWS_AS(rho(-0.1), DomainError);
    CHECK_THROWS_AS(rho(20.5), DomainError);
}

TEST_CASE("known values")
{
    // Standard published values of the Dickman function.
    CHECK(std::abs(rho(3.0) - 0.04860838829) < 1e-10);
    CHECK(std::abs(rho(4.0) - 0.004910925648) < 1e-11);
    CHECK(std::abs(rho(5.0) - 3.547247005e-4) < 1e-12);
    CHECK(std::abs(rho(10.0) / 2.770171837e-11 - 1) < 1e-8);
}

TEST_CASE("continuity at the knots")
{
    const auto& table = default_rho_table();
    for (int k = 2; k < 20; ++k) {
        const double left = table(k - 1e-13), right = table(k + 1e-13);
        CHECK(std::abs(left - right) < 1e-12);
    }
}

TEST_CASE("independent solvers agree on [0, 10]")
{
    RhoRk4Reference reference(10.0, 1e-5);
    double worst = 0;
    for (int i = 0; i <= 10000; ++i) {
        const double u = i * 1e-3;
        worst = std::max(worst, std::abs(reference.at(u) - rho(u)));
    }
    CHECK(worst < 1e-8);
    CHECK(std::abs(reference.at(3.0) - rho(3.0)) < 1e-8);
}

TEST_CASE("delay equation residual and monotonicity")
{
    const auto& table = default_rho_table();
    double worst = 0;
    for (double u = 1.005; u < 19.99; u += 0.01) worst = std::max(worst, delay_residual(table, u));
    CHECK(worst <= 1e-8);
    auto grid = table.mesh(0.01);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(grid[i].second > 0);
        if (grid[i].first > 1) CHECK(grid[i].second < grid[i - 1].second);
    }
    for (double u = 1.01; u <= 20; u += 0.173) CHECK(rho(u) < rho(u - 1));
}

TEST_CASE("product prediction")
{
    const std::vector<unsigned> one{1}, two{2}, pair{1, 1};
    CHECK(martin_prediction(one, 1.0) == 1.0);
    CHECK(martin_prediction(two, 1.0) == doctest::Approx(1 - std::log(2.0)));
    CHECK(martin_prediction(pair, 2.0) == doctest::Approx(rho(2.0) * rho(2.0)));
    CHECK_THROWS_AS(martin_prediction(two, 11.0), DomainError);
}

TEST_CASE("long double table agrees")
{
    BasicRhoTable<long double> wide(12);
    for (double u = 0; u <= 12; u += 0.37) CHECK(std::abs(static_cast<double>(wide(u)) - rho(u)) < 1e-13);
}
