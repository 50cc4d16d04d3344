// Exact evaluation of the quantities V and W that bound
//
//     Ψ_f(x, y) - Ψ_f(z, y) < V + sqrt(Ψ_f(x, y) - Ψ_f(z, y)) sqrt(W),
//
// both in the single-step form (sums over k <= f(x)) and in the iterated form
// split into a head V_m^+, W_m^+ (products of prime powers up to h = x - z,
// counted exactly) and tails V_i^-, W_i^- weighted by ω_f.
//
// The tails use the multiplicative structure of ω_f and suffix sums over the
// prime powers up to f(x); `oracle` holds literal transcriptions of the
// defining sums for small instances.
#pragma once

#include <optional>
#include <vector>

#include "smoothpoly/modroots.hpp"
#include "smoothpoly/poly.hpp"

namespace smoothpoly {

struct VWInstance {
    FactoredPoly f;
    i64 x = 0;
    i64 z = 0;
    long double y = 1;
    unsigned depth = 1;

    i64 h() const { return x - z; }
};

/// Largest accepted x, f(x), min(y, f(x)) and depth.
inline constexpr i64 kVWMaxX = 100000;
inline constexpr u64 kVWMaxFx = 1000000000000ull;
inline constexpr u64 kVWMaxPrime = 20000000;
inline constexpr unsigned kVWMaxDepth = 3;

struct VWReport {
    u64 lhs = 0;
    long T0 = 0;
    long double log_fz = 0;
    /// log(f(z)/x); zero when f(z) <= x.
    long double log_ratio = 0;
    unsigned depth = 0;
    long double V = 0;
    long double W = 0;
    /// Index j-1 holds V_j^+ (resp. W_j^+), j = 1..depth.
    std::vector<long double> V_plus, W_plus;
    /// Index i-1 holds V_i^- (resp. W_i^-), i = 1..depth.
    std::vector<long double> V_minus, W_minus;
    /// Single-step form only: the parts of V, W from k <= h (resp. [k1,k2] <= h).
    long double V_within_h = 0;
    long double W_within_h = 0;
    bool lhs_empty = false;
    bool verdict_2_1 = false;
    bool verdict_2_2 = false;
    /// V_j^+ < V_{j+1}^+ + V_{j+1}^- for every j < depth (and for W).
    std::optional<bool> monotone_V, monotone_W;
};

struct Lemma31Report {
    u64 kappa = 0;
    u64 lhs = 0;
    long double head = 0;
    long double tail = 0;
    long double rhs = 0;
    bool lhs_empty = false;
    bool verdict = false;
};

struct Lemma41Report {
    long double sum_all = 0;        // Σ Λ(k)ω(k)/k, P+(k) <= y
    long double sum_upper = 0;      // same over sqrt(y) < P+(k) <= y
    long double sum_log = 0;        // Σ (2 log k - Λ(k)) Λ(k) ω(k)/k
    long double sum_plain = 0;      // Σ Λ(k) ω(k)
    long double cmp_all = 0;        // g log y
    long double cmp_upper = 0;      // (g/2) log y
    long double cmp_log = 0;        // (g/2) (log y)^2
    long double cmp_plain = 0;      // y log x / log y
};

/// (lhs, V, W) checks shared by both forms; lhs = 0 passes vacuously.
bool inequality_holds(u64 lhs, long double V, long double W);
bool consequence_holds(u64 lhs, long double V, long double W);

/// Shared per-instance data: smooth values in (z, x], their divisor counts
/// up to h and the root cache.
class VWContext {
public:
    explicit VWContext(VWInstance inst, unsigned threads = 1);
    VWContext(const VWContext&) = delete;
    VWContext& operator=(const VWContext&) = delete;

    const VWInstance& instance() const { return inst_; }

    VWReport prop21() const;
    VWReport prop32(unsigned depth) const;
    Lemma31Report lemma31(u64 kappa) const;

private:
    struct PrimePowerEntry {
        u64 k;
        u64 p;
        unsigned v;
        long double log_p;
    };

    void require_ratio() const;
    // Σ_{k in PP_y, t < k <= f(x)} Λ(k) ω(K k) for K <= h.
    long double tail_weight(u64 K, u64 t) const;
    u64 omega_times(u64 K, u64 p, unsigned v) const;
    std::vector<long double> convolve_y(const std::vector<long double>& a) const;

    VWInstance inst_;
    long T0_;
    u64 fx_;
    u64 fz_;
    u64 plimit_;
    long double log_fz_;
    long double log_ratio_;
    std::vector<u64> smooth_values_;     // f(n) for smooth n in (z, x]
    std::vector<u64> cnt_;               // cnt_[κ] = #{smooth n : κ | f(n)}, κ <= h
    std::vector<PrimePowerEntry> pp_;     // prime powers <= f(x) with p <= y, by value
    std::vector<long double> suffix_;    // suffix_[i] = Σ_{j >= i} Λ ω over pp_
    std::vector<u64> spf_;               // smallest prime factor up to h
    mutable RootCache cache_;
};

VWReport vw_prop21(const VWInstance& inst);
VWReport vw_prop32(const VWInstance& inst);
Lemma31Report lemma31_check(const VWInstance& inst, u64 kappa);

/// The four prime-power sums over k <= x with P+(k) <= y, with comparators.
Lemma41Report lemma41_sums(const FactoredPoly& f, u64 x, long double y);

namespace oracle {

/// Literal nested-loop evaluation over all integers k (and n) for small
/// instances: f(x) <= 2e5, h <= 400, depth <= 2.
VWReport vw_literal(const VWInstance& inst);
Lemma31Report lemma31_literal(const VWInstance& inst, u64 kappa);
/// Direct prime-power summation with ω by residue scanning; x <= 1e5.
Lemma41Report lemma41_literal(const FactoredPoly& f, u64 x, long double y);

}  // namespace oracle

}  // namespace smoothpoly
