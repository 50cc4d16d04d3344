// Word-size number theory: modular arithmetic, primality, factoring of
// machine integers, prime tables and the von Mangoldt function.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smoothpoly {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Raised when an input violates a mathematical precondition.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a request exceeds the desk-scale computation budget.
class ScaleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A prime power p^v with v >= 1.
struct PrimePower {
    u64 p = 0;
    unsigned v = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m);

/// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

u64 isqrt(u64 n);
u64 gcd(u64 a, u64 b);

/// Checked integer power; nullopt on overflow of 64 bits.
std::optional<u64> checked_pow(u64 base, unsigned exp);

/// Factorization sorted by prime; empty for n = 1. Throws on n = 0.
Factorization factorize(u64 n);

/// Largest prime factor with P+(1) = 1.
u64 largest_prime_factor(u64 n);

/// All primes <= limit, cached process-wide and safe for concurrent callers.
std::span<const std::uint32_t> primes_up_to(std::uint32_t limit);

/// Λ(k): returns the prime power decomposition when k = p^v, else nullopt.
std::optional<PrimePower> mangoldt(u64 k);

/// Λ(k) as a real number (log p or 0).
long double mangoldt_value(u64 k);

/// Exact 128-bit helpers.
std::string to_string(u128 v);
std::string to_string(i128 v);

}  // namespace smoothpoly
