#include "smoothpoly/bounds.hpp"

#include <cmath>

namespace smoothpoly {

namespace {

void check_dgu(unsigned d, unsigned g, long double u)
{
    if (d < 2) throw DomainError("degree d >= 2 required");
    if (g < 1 || g > d) throw DomainError("factor count g must satisfy 1 <= g <= d");
    if (!(u >= 1)) throw DomainError("u >= 1 required");
}

// d (d-1)^{m-1} u^m
long double denominator(unsigned d, long double u, unsigned m)
{
    return d * std::pow(static_cast<long double>(d - 1), static_cast<long double>(m) - 1) * std::pow(u, static_cast<long double>(m));
}

}  // namespace

long double gamma_f(unsigned d, unsigned g, long double u)
{
    check_dgu(d, g, u);
    const long double a = (2.0L * g + 1) / (16.0L * d * u);
    return 0.5L + a + std::sqrt(a + a * a);
}

long double thm11_coefficient(unsigned d, unsigned g, long double u)
{
    const long double gamma = gamma_f(d, g, u);
    const auto m = static_cast<unsigned>(std::floor(u));
    return gamma * std::pow(static_cast<long double>(g), static_cast<long double>(m)) / denominator(d, u, m);
}

long double timofeev_coefficient(unsigned d, unsigned g, long double u, long double eps)
{
    check_dgu(d, g, u);
    if (eps < 0) throw DomainError("epsilon must be >= 0");
    const auto m = static_cast<unsigned>(std::floor(u));
    return std::pow(g + eps, static_cast<long double>(m)) / denominator(d, u, m);
}

long double hmyrova_coefficient(long double u)
{
    if (!(u >= 1)) throw DomainError("u >= 1 required");
    return std::exp(-u * (std::log(u) - 1));
}

long double cassels_coeff(unsigned d)
{
    if (d < 2) throw DomainError("degree d >= 2 required");
    const long double a = 3.0L / (16.0L * d);
    return 1 - 1.0L / (2.0L * d) - 3.0L / (16.0L * d * d) - std::sqrt(a + a * a) / d;
}

bool in_theorem_range(long double x, long double u)
{
    if (!(x > std::exp(1.0L))) return false;
    const long double lx = std::log(x);
    return u >= 1 && u <= std::sqrt(lx) / std::log(lx);
}

BoundReport bound_report(unsigned d, unsigned g, long double u, long double eps, std::optional<long double> x)
{
    BoundReport r;
    r.d = d;
    r.g = g;
    r.u = u;
    r.m = static_cast<unsigned>(std::floor(u));
    r.gamma = gamma_f(d, g, u);
    r.thm11 = thm11_coefficient(d, g, u);
    r.timofeev_eps = eps;
    r.timofeev = timofeev_coefficient(d, g, u, eps);
    r.hmyrova = hmyrova_coefficient(u);
    r.hmyrova_applies = g == 1;
    if (g == 1) r.cassels = cassels_coeff(d);
    if (x) r.outside_theorem_range = !in_theorem_range(*x, u);
    return r;
}

long double thm11_main_term(const FactoredPoly& f, long double x, long double u)
{
    return thm11_coefficient(f.d(), f.g(), u) * x;
}

}  // namespace smoothpoly
