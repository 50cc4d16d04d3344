// Prime ideals of Q(sqrt m), m squarefree with m ≡ 2, 3 (mod 4), and the
// count C_α(x) for α = sqrt m: the number of n in [1, x] such that some prime
// ideal divides (n + sqrt m) but no other (k + sqrt m), 1 <= k <= x.
//
// The ring of integers is Z[sqrt m]. A prime ideal above p containing
// n + sqrt m exists iff p | n^2 - m, and it is the one on which sqrt m ≡ -n,
// so ideals dividing some (n + sqrt m) are tagged by (p, n mod p).
#pragma once

#include <vector>

#include "smoothpoly/poly.hpp"
#include "smoothpoly/sieve.hpp"

namespace smoothpoly {

enum class SplitKind { split, inert, ramified };

const char* to_string(SplitKind kind);

struct QuadPrimeClass {
    u64 p = 0;
    SplitKind kind = SplitKind::inert;
    /// Residues u with u^2 ≡ m (mod p), sorted.
    std::vector<u64> roots;
    /// First degree and unramified.
    bool in_P_K = false;
};

class QuadContext {
public:
    explicit QuadContext(i64 m);

    i64 m() const { return m_; }
    u64 disc() const { return 4 * static_cast<u64>(m_); }
    /// t^2 - m; its root -sqrt m is the negative of α.
    const FactoredPoly& poly() const { return f_; }

private:
    i64 m_;
    FactoredPoly f_;
};

/// Square root of a modulo an odd prime p (Tonelli-Shanks); a must be a residue.
u64 sqrt_mod(u64 a, u64 p);

QuadPrimeClass classify_prime(const QuadContext& ctx, u64 p);

struct CAlphaWitness {
    i64 n = 0;
    /// The ideal is tagged by (p, n mod p).
    u64 p = 0;
};

struct CAlphaResult {
    u64 count = 0;
    std::vector<CAlphaWitness> witnesses;
};

/// Which k are excluded: [1, x] as in the definition of C_α, or [0, x].
enum class ExclusionStart { zero = 0, one = 1 };

inline constexpr i64 kCAlphaMaxX = 10000000;

/// C_α(x); largest prime factors from the sieve.
CAlphaResult c_alpha(const QuadContext& ctx, i64 x, const SieveOptions& opts = {});

/// n in (N, N+M] whose (n + sqrt m) has a prime ideal factor dividing no
/// (k + sqrt m), k in [start, N+M], k != n.
CAlphaResult windowed_cassels(const QuadContext& ctx, i64 N, i64 M, ExclusionStart start = ExclusionStart::zero,
                              const SieveOptions& opts = {});

struct Prop54Report {
    i64 x = 0;
    u64 c_alpha = 0;
    u64 psi = 0;
    u64 non_smooth = 0;  // x - Ψ_f(x, x)
    u64 residual = 0;
    long double ratio = 0;  // residual log x / x
};

Prop54Report verify_prop54(const QuadContext& ctx, i64 x, const SieveOptions& opts = {});

/// For n <= n_max, "some prime p > x divides n^2 - m" against "some
/// first-degree unramified prime ideal of norm > x contains n + sqrt m".
/// The first side reads the sieve; the second enumerates split primes up to
/// n_max^2 + m with their square roots of m and marks n ≡ ±u (mod p).
struct Lemma52Report {
    i64 n_max = 0;
    std::vector<u64> x_values;
    std::vector<u64> mismatches;  // per x value
    /// Least x0 such that the two sides agree for every n and every x >= x0.
    u64 threshold = 1;
};

inline constexpr i64 kLemma52MaxN = 20000;

Lemma52Report lemma52_check(const QuadContext& ctx, i64 n_max, const std::vector<u64>& x_values);

namespace oracle {

/// Counts the tags (p, k mod p) over k in the exclusion range by trial
/// division and keeps n whose own tags include one seen exactly once.
/// N + M <= 1e6.
CAlphaResult unique_class_count(const QuadContext& ctx, i64 N, i64 M, ExclusionStart start);

}  // namespace oracle

}  // namespace smoothpoly
