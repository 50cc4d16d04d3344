// Primitive divisors of A_n = n^2 + b and the counts R_b(x), N(x).
//
// A prime d is a primitive divisor of A_n when d | A_n and d divides no A_m
// with 1 <= m < n. For n > |b| this happens iff P+(n^2 + b) > 2n; smaller n
// are decided from the definition.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "smoothpoly/poly.hpp"
#include "smoothpoly/sieve.hpp"

namespace smoothpoly {

enum class PrimDivMethod { criterion, direct };

const char* to_string(PrimDivMethod method);

/// Whether A_0 = b takes part in the definition for n <= |b|.
enum class SequenceStart { one = 1, zero = 0 };

struct PrimDivRecord {
    i64 b = 0;
    i64 n = 0;
    u128 pplus = 0;
    bool has_primitive = false;
    PrimDivMethod method = PrimDivMethod::direct;
};

/// t^2 + b after checking that -b is not a square.
FactoredPoly shifted_square(i64 b);

PrimDivRecord has_primitive_divisor(i64 b, i64 n, SequenceStart start = SequenceStart::one);

inline constexpr i64 kPrimDivMaxX = 10000000;
inline constexpr i64 kPrimDivMaxB = 1000000;

/// Records for n = 1..x.
std::vector<PrimDivRecord> primdiv_records(i64 b, i64 x, SequenceStart start = SequenceStart::one,
                                           const SieveOptions& opts = {});

/// R_b(x).
u64 r_b(i64 b, i64 x, SequenceStart start = SequenceStart::one, const SieveOptions& opts = {});

struct ArctanCount {
    u64 count = 0;
    /// n = 1 is counted by the definition although P+(2) = 2 fails P+ > 2n.
    bool n1_by_definition = true;
};

/// N(x): n <= x with arctan n irreducible, by P+(n^2 + 1) > 2n for n >= 2.
ArctanCount n_arctan(i64 x, const SieveOptions& opts = {});

/// Running N(n) for n = 0..x.
std::vector<u64> n_arctan_prefix(i64 x, const SieveOptions& opts = {});

struct Prop63Report {
    i64 b = 0;
    i64 x = 0;
    u64 r_b = 0;
    u64 psi = 0;
    u64 non_smooth = 0;
    u64 residual = 0;
    /// residual log x / (x log log x).
    long double ratio = 0;
};

Prop63Report verify_prop63(i64 b, i64 x, const SieveOptions& opts = {});

/// CSV with columns b, n, pplus, has_primitive, method.
void write_csv(std::ostream& out, const std::vector<PrimDivRecord>& records);

namespace oracle {

/// has_primitive for n = 1..x straight from the definition: factor every A_n
/// by trial division and compare with the primes of earlier terms. x <= 2e4.
std::vector<bool> primitive_by_definition(i64 b, i64 x, SequenceStart start = SequenceStart::one);

}  // namespace oracle

}  // namespace smoothpoly
