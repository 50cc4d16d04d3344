// Roots of f modulo primes and prime powers, and the root-counting
// function ω_f(k) = #{u mod k : f(u) ≡ 0 mod k}.
#pragma once

#include <map>
#include <shared_mutex>
#include <vector>

#include "smoothpoly/arith.hpp"
#include "smoothpoly/poly.hpp"

namespace smoothpoly {

/// Sorted distinct residues u in [0, p^v) with f(u) ≡ 0 (mod p^v).
struct RootSet {
    u64 p = 0;
    unsigned v = 1;
    std::vector<u64> residues;

    u64 modulus() const;
    std::size_t size() const { return residues.size(); }
};

/// Largest prime accepted by roots_mod_p.
inline constexpr u64 kMaxRootPrime = (1ull << 32) - 1;
/// Above this bound, primes dividing the leading coefficient are rejected.
inline constexpr u64 kMaxScanPrime = 1ull << 16;
/// Largest modulus accepted by omega.
inline constexpr u64 kMaxOmegaModulus = 1ull << 48;

/// Mixed into the seed of the randomized root splitting. Root sets do not
/// depend on it.
void set_splitting_seed(u64 seed);

/// Roots of f modulo a prime p < 2^32 (Cantor-Zassenhaus root extraction,
/// exhaustive scan for tiny p or p dividing the leading coefficient).
RootSet roots_mod_p(const FactoredPoly& f, u64 p);
RootSet roots_mod_p(const IntPoly& f, u64 p);

/// All roots modulo p^v, p^v < 2^64, by Hensel lifting level by level.
RootSet lift_roots(const FactoredPoly& f, u64 p, unsigned v);
RootSet lift_roots(const IntPoly& f, u64 p, unsigned v);

/// ω_f(k) via multiplicativity over the factorization of k; ω_f(1) = 1.
u64 omega(const FactoredPoly& f, u64 k);
/// ω_f of a product given as prime powers; equal primes are merged first.
u64 omega_of_factors(const FactoredPoly& f, std::span<const PrimePower> parts);

/// Huxley's per-prime bound d * p^{θ(p)/2}, θ(p) = v_p(Δ_f).
long double huxley_bound(const FactoredPoly& f, u64 p);
/// The global bound d * sqrt(Δ_f).
long double global_root_bound(const FactoredPoly& f);

/// Memoized ω_f(p^v) for one polynomial. Readers share a lock; insertions
/// take it exclusively.
class RootCache {
public:
    explicit RootCache(const FactoredPoly& f) : f_(&f) {}

    const FactoredPoly& poly() const { return *f_; }
    /// Roots modulo p (computed once).
    std::vector<u64> roots(u64 p);
    u64 omega_prime_power(u64 p, unsigned v);
    u64 omega_of_factors(std::span<const PrimePower> parts);

private:
    const FactoredPoly* f_;
    std::shared_mutex mutex_;
    std::map<u64, std::vector<u64>> roots_;
    std::map<std::pair<u64, unsigned>, u64> counts_;
};

}  // namespace smoothpoly
