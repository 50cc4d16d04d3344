// Exact Ψ_f(x, y) and per-n largest prime factors of f(n) by a segmented
// sieve over the root classes of f modulo each prime.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "smoothpoly/arith.hpp"
#include "smoothpoly/modroots.hpp"
#include "smoothpoly/poly.hpp"

namespace smoothpoly {

/// P+(0) = +infinity.
inline constexpr u128 kPplusInfinity = ~static_cast<u128>(0);

struct SieveOptions {
    std::size_t segment_size = std::size_t{1} << 20;
    unsigned threads = 1;
    /// Optional shared root cache; one is created per call otherwise.
    RootCache* cache = nullptr;
};

/// Smoothness data for f(n), lo <= n <= hi.
struct SmoothTable {
    FactoredPoly f;
    i64 lo = 1;
    i64 hi = 0;
    long double y = 1;
    std::vector<std::uint8_t> flags;
    /// P+(|f(n)|); kPplusInfinity where f(n) = 0.
    std::optional<std::vector<u128>> pplus;
    u64 psi = 0;

    std::size_t size() const { return flags.size(); }
    bool smooth(i64 n) const { return flags[static_cast<std::size_t>(n - lo)] != 0; }
    u128 pplus_at(i64 n) const { return (*pplus)[static_cast<std::size_t>(n - lo)]; }
    /// Number of smooth n in [lo, n].
    u64 count_up_to(i64 n) const;
};

/// Primes p <= y are the primes up to this integer.
u64 prime_limit(long double y);

/// x^{1/u} in extended precision; when u is an integer the floor is exact.
long double smoothness_bound(u64 x, long double u);

/// Ψ_f(x, y): number of n in [1, x] with P+(|f(n)|) <= y.
SmoothTable psi(const FactoredPoly& f, i64 x, long double y, const SieveOptions& opts = {});

/// Smoothness flags on an arbitrary range lo <= n <= hi (lo >= 0).
SmoothTable sieve_range(const FactoredPoly& f, i64 lo, i64 hi, long double y, const SieveOptions& opts = {});

/// Exact P+(|f(n)|) for 1 <= n <= x, sieving primes up to bound. Requires
/// bound^2 > max |f(n)| so every surviving cofactor is prime. Flags mark
/// P+ <= bound.
SmoothTable pplus_table(const FactoredPoly& f, i64 x, u64 bound, const SieveOptions& opts = {});
SmoothTable pplus_range(const FactoredPoly& f, i64 lo, i64 hi, u64 bound, const SieveOptions& opts = {});

/// Brute-force Ψ_f(x, y) by trial division of every |f(n)|; x <= 1e5.
u64 psi_oracle(const FactoredPoly& f, i64 x, long double y);

/// P+(|v|) by trial division; 1 for |v| = 1, 0 for v = 0 (meaning +infinity).
mpz_class largest_prime_factor_trial(const mpz_class& v);

/// CSV with columns n, f(n), pplus, smooth.
void write_csv(std::ostream& out, const SmoothTable& table);

}  // namespace smoothpoly
