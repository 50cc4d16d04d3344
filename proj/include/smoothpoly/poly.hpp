// Exact integer polynomials, validated factored input, discriminants and
// the monotonicity threshold T_0(f).
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "smoothpoly/arith.hpp"

namespace smoothpoly {

/// Nonzero polynomial in Z[t], coefficients stored lowest degree first.
class IntPoly {
public:
    /// Trailing zeros are stripped; throws DomainError for the zero polynomial.
    explicit IntPoly(std::vector<mpz_class> coeffs);

    static IntPoly monomial(long coeff, unsigned degree);

    unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const mpz_class& leading() const { return coeffs_.back(); }
    const mpz_class& operator[](unsigned i) const { return coeffs_[i]; }

    mpz_class eval(const mpz_class& n) const;
    mpz_class eval(long n) const { return eval(mpz_class(n)); }
    /// Value mod m in [0, m).
    u64 eval_mod(u64 n, u64 m) const;

    /// Coefficients reduced into [0, m).
    std::vector<u64> reduce_mod(u64 m) const;

    /// Throws DomainError for constants.
    IntPoly derivative() const;
    mpz_class content() const;
    IntPoly operator-() const;
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Symbolic rendering in the variable t, e.g. "t^2+1".
    std::string to_string() const;
    /// Sum of |c_i| x^i, an upper bound for |f(n)| on |n| <= x.
    mpz_class height_bound(const mpz_class& x) const;

private:
    std::vector<mpz_class> coeffs_;
};

/// Parses "t^2-2", "2*t^3 + t - 7" or a JSON-style list "[-2,0,1]".
IntPoly parse_poly(std::string_view text);

/// Parses a JSON array of polynomials (each a coefficient list or a string).
std::vector<IntPoly> parse_factor_list(std::string_view text);

enum class Irreducibility { proven, asserted };

/// f = f_1 ... f_g with distinct primitive factors of positive leading coefficient.
class FactoredPoly {
public:
    const std::vector<IntPoly>& factors() const { return factors_; }
    const std::vector<unsigned>& degrees() const { return degrees_; }
    const std::vector<Irreducibility>& status() const { return status_; }
    unsigned g() const { return static_cast<unsigned>(factors_.size()); }
    unsigned d() const { return d_; }
    /// |disc(f_1 ... f_g)|, always positive.
    const mpz_class& discriminant_abs() const { return disc_; }
    /// The expanded product.
    const IntPoly& product() const { return product_; }
    /// True when the caller supplied negative leading coefficients and the
    /// sign was flipped (harmless because Ψ_{-f} = Ψ_f).
    bool sign_flipped() const { return sign_flipped_; }
    bool has_asserted_factor() const;

    mpz_class eval(const mpz_class& n) const { return product_.eval(n); }
    mpz_class eval(long n) const { return product_.eval(n); }
    std::string to_string() const;

private:
    friend FactoredPoly build_factored(std::vector<IntPoly> factors);
    FactoredPoly(std::vector<IntPoly> factors, std::vector<Irreducibility> status, bool flipped);

    std::vector<IntPoly> factors_;
    std::vector<unsigned> degrees_;
    std::vector<Irreducibility> status_;
    unsigned d_ = 0;
    mpz_class disc_;
    IntPoly product_;
    bool sign_flipped_ = false;
};

/// Validates and normalizes a factor list. Throws DomainError on duplicate
/// factors, non-primitive factors, zero discriminant or rational roots in
/// factors of degree >= 2.
FactoredPoly build_factored(std::vector<IntPoly> factors);

/// Signed discriminant.
mpz_class discriminant(const IntPoly& f);
/// Resultant Res(f, g) via the Sylvester determinant.
mpz_class resultant(const IntPoly& f, const IntPoly& g);

/// Rational roots p/q of f, as (numerator, denominator) with q > 0.
std::vector<std::pair<mpz_class, mpz_class>> rational_roots(const IntPoly& f);

/// Least integer T >= 2 with sign*f strictly increasing and > 1 on (T, inf).
/// Throws DomainError for constant f or when sign*f -> -inf.
long t0(const IntPoly& f, int sign = 1);
inline long t0(const FactoredPoly& f, int sign = 1) { return t0(f.product(), sign); }

/// Number of distinct real roots of f in the open ray (a, +inf).
unsigned count_real_roots_above(const IntPoly& f, const mpz_class& a);

/// p-adic valuation of a nonzero integer.
unsigned valuation(const mpz_class& n, u64 p);

}  // namespace smoothpoly
