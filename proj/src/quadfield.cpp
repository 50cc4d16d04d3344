#include "smoothpoly/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace smoothpoly {

namespace {

bool squarefree(u64 m)
{
    for (const auto& [p, e] : factorize(m))
        if (e > 1) return false;
    return true;
}

u64 abs_f(const QuadContext& ctx, i64 n)
{
    const i128 v = static_cast<i128>(n) * n - ctx.m();
    return static_cast<u64>(v < 0 ? -v : v);
}

u64 to_u64(u128 v) { return v > UINT64_MAX ? UINT64_MAX : static_cast<u64>(v); }

// n in [lo, hi] counted when P+(n^2 - m) exceeds max(n - start, X - n).
CAlphaResult count_unique(const QuadContext& ctx, i64 lo, i64 hi, i64 start, i64 X, const SieveOptions& opts)
{
    CAlphaResult out;
    if (hi < lo) return out;
    const u64 bound = std::max<u64>(static_cast<u64>(hi), isqrt(static_cast<u64>(ctx.m()))) + 1;
    const auto table = pplus_range(ctx.poly(), lo, hi, bound, opts);
    for (i64 n = lo; n <= hi; ++n) {
        const u128 big = table.pplus_at(n);
        const i64 reach = std::max(n - start, X - n);
        if (big != kPplusInfinity && big > 1 && big > static_cast<u128>(reach)) {
            ++out.count;
            out.witnesses.push_back({n, to_u64(big)});
        }
    }
    return out;
}

}  // namespace

const char* to_string(SplitKind kind)
{
    switch (kind) {
    case SplitKind::split: return "split";
    case SplitKind::inert: return "inert";
    case SplitKind::ramified: return "ramified";
    }
    return "?";
}

QuadContext::QuadContext(i64 m) : m_(m), f_(build_factored({parse_poly("t^2-" + std::to_string(m))}))
{
    if (m < 2) throw DomainError("m must be >= 2");
    if (m % 4 != 2 && m % 4 != 3) throw DomainError("m must be 2 or 3 mod 4");
    if (!squarefree(static_cast<u64>(m))) throw DomainError("m must be squarefree");
}

u64 sqrt_mod(u64 a, u64 p)
{
    a %= p;
    if (p == 2 || a == 0) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) throw DomainError("sqrt_mod: not a quadratic residue");
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = powmod(z, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    u64 t = powmod(a, q, p);
    unsigned k = s;
    while (t != 1) {
        unsigned i = 0;
        for (u64 tt = t; tt != 1; tt = mulmod(tt, tt, p)) ++i;
        u64 b = c;
        for (unsigned j = 0; j + i + 1 < k; ++j) b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        k = i;
    }
    return r;
}

QuadPrimeClass classify_prime(const QuadContext& ctx, u64 p)
{
    if (!is_prime(p)) throw DomainError("classify_prime: " + std::to_string(p) + " is not prime");
    QuadPrimeClass c;
    c.p = p;
    const u64 mr = static_cast<u64>(ctx.m()) % p;
    if (p == 2 || mr == 0) {
        c.kind = SplitKind::ramified;
        c.roots = {mr % 2 == 1 && p == 2 ? u64{1} : u64{0}};
        return c;
    }
    if (powmod(mr, (p - 1) / 2, p) != 1) return c;
    c.kind = SplitKind::split;
    c.in_P_K = true;
    const u64 u = sqrt_mod(mr, p);
    c.roots = {std::min(u, p - u), std::max(u, p - u)};
    return c;
}

CAlphaResult c_alpha(const QuadContext& ctx, i64 x, const SieveOptions& opts)
{
    if (x < 1) throw DomainError("c_alpha: x must be >= 1");
    if (x > kCAlphaMaxX) throw ScaleError("c_alpha: x exceeds 1e7");
    return count_unique(ctx, 1, x, 1, x, opts);
}

CAlphaResult windowed_cassels(const QuadContext& ctx, i64 N, i64 M, ExclusionStart start, const SieveOptions& opts)
{
    if (N < 0 || M < 0) throw DomainError("window needs N >= 0 and M >= 0");
    if (N + M > kCAlphaMaxX) throw ScaleError("windowed_cassels: N + M exceeds 1e7");
    const i64 lo = std::max<i64>(N + 1, static_cast<i64>(start));
    return count_unique(ctx, lo, N + M, static_cast<i64>(start), N + M, opts);
}

Prop54Report verify_prop54(const QuadContext& ctx, i64 x, const SieveOptions& opts)
{
    if (x < 2) throw DomainError("verify_prop54: x must be >= 2");
    Prop54Report r;
    r.x = x;
    r.c_alpha = c_alpha(ctx, x, opts).count;
    r.psi = psi(ctx.poly(), x, static_cast<long double>(x), opts).psi;
    r.non_smooth = static_cast<u64>(x) - r.psi;
    r.residual = r.c_alpha > r.non_smooth ? r.c_alpha - r.non_smooth : r.non_smooth - r.c_alpha;
    r.ratio = r.residual * std::log(static_cast<long double>(x)) / x;
    return r;
}

Lemma52Report lemma52_check(const QuadContext& ctx, i64 n_max, const std::vector<u64>& x_values)
{
    if (n_max < 1) throw DomainError("lemma52_check: n_max must be >= 1");
    if (n_max > kLemma52MaxN) throw ScaleError("lemma52_check: n_max exceeds 2e4");
    const u64 bound = std::max<u64>(static_cast<u64>(n_max), isqrt(static_cast<u64>(ctx.m()))) + 1;
    const auto table = pplus_table(ctx.poly(), n_max, bound);

    // Largest split prime whose ideals contain n + sqrt m.
    std::vector<u64> ideal_side(static_cast<std::size_t>(n_max) + 1, 0);
    const u64 top = std::max(abs_f(ctx, n_max), static_cast<u64>(ctx.m()));
    for (u64 p : primes_up_to(static_cast<std::uint32_t>(top))) {
        const u64 mr = static_cast<u64>(ctx.m()) % p;
        if (p == 2 || mr == 0 || powmod(mr, (p - 1) / 2, p) != 1) continue;
        const u64 u = sqrt_mod(mr, p);
        for (u64 r : {u, p - u})
            for (u64 n = r; n <= static_cast<u64>(n_max); n += p)
                if (n > 0) ideal_side[n] = std::max(ideal_side[n], p);
    }

    Lemma52Report rep;
    rep.n_max = n_max;
    rep.x_values = x_values;
    rep.mismatches.assign(x_values.size(), 0);
    for (i64 n = 1; n <= n_max; ++n) {
        const u64 rational = to_u64(table.pplus_at(n));
        const u64 ideal = ideal_side[static_cast<std::size_t>(n)];
        if (rational == ideal) continue;
        // Disagreement exactly for ideal <= x < rational.
        rep.threshold = std::max(rep.threshold, rational);
        for (std::size_t i = 0; i < x_values.size(); ++i)
            rep.mismatches[i] += ideal <= x_values[i] && x_values[i] < rational;
    }
    return rep;
}

namespace oracle {

CAlphaResult unique_class_count(const QuadContext& ctx, i64 N, i64 M, ExclusionStart start)
{
    if (N < 0 || M < 0) throw DomainError("window needs N >= 0 and M >= 0");
    if (N + M > 1000000) throw ScaleError("unique_class_count: N + M exceeds 1e6");
    const i64 first = static_cast<i64>(start);
    std::map<std::pair<u64, u64>, u64> seen;
    std::vector<std::vector<u64>> tags(static_cast<std::size_t>(N + M - first + 1));
    for (i64 k = first; k <= N + M; ++k) {
        auto& mine = tags[static_cast<std::size_t>(k - first)];
        for (const auto& [p, e] : factorize(abs_f(ctx, k))) {
            ++seen[{p, static_cast<u64>(k) % p}];
            mine.push_back(p);
        }
    }
    CAlphaResult out;
    for (i64 n = std::max(N + 1, first); n <= N + M; ++n)
        for (u64 p : tags[static_cast<std::size_t>(n - first)])
            if (seen[{p, static_cast<u64>(n) % p}] == 1) {
                ++out.count;
                out.witnesses.push_back({n, p});
                break;
            }
    return out;
}

}  // namespace oracle

}  // namespace smoothpoly
