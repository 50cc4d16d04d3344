// Closed-form coefficients for upper bounds on Ψ_f(x, x^{1/u}): the improved
// factor γ_f(u), the main term of the headline bound, the Timofeev and
// Hmyrova comparators, and the quadratic-field density coefficient.
#pragma once

#include <optional>

#include "smoothpoly/poly.hpp"

namespace smoothpoly {

/// 1/2 + a + sqrt(a + a^2) with a = (2g+1)/(16du). Needs d >= 2, 1 <= g <= d, u >= 1.
long double gamma_f(unsigned d, unsigned g, long double u);

/// γ_f(u) g^m / (d (d-1)^{m-1} u^m), m = floor(u).
long double thm11_coefficient(unsigned d, unsigned g, long double u);

/// (g+ε)^m / (d (d-1)^{m-1} u^m), m = floor(u).
long double timofeev_coefficient(unsigned d, unsigned g, long double u, long double eps);

/// exp(-u log(u/e)), with the polynomial-dependent constant set to 1.
long double hmyrova_coefficient(long double u);

/// 1 - 1/(2d) - 3/(16d^2) - (1/d) sqrt(3/(16d) + (3/(16d))^2).
long double cassels_coeff(unsigned d);

struct BoundReport {
    unsigned d = 0;
    unsigned g = 0;
    long double u = 0;
    unsigned m = 0;
    long double gamma = 0;
    long double thm11 = 0;
    long double timofeev = 0;
    long double timofeev_eps = 0;
    long double hmyrova = 0;
    /// Meaningful only for g = 1.
    bool hmyrova_applies = false;
    std::optional<long double> cassels;
    /// Set when x is given and u lies outside 1 <= u <= sqrt(log x)/log log x.
    bool outside_theorem_range = false;
};

BoundReport bound_report(unsigned d, unsigned g, long double u, long double eps = 0, std::optional<long double> x = {});

/// Main term coefficient times x. Throws for d < 2.
long double thm11_main_term(const FactoredPoly& f, long double x, long double u);

/// True when 1 <= u <= sqrt(log x) / log log x.
bool in_theorem_range(long double x, long double u);

}  // namespace smoothpoly
