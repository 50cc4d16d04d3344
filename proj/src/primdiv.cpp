#include "smoothpoly/primdiv.hpp"

#include <cmath>
#include <ostream>
#include <unordered_set>

namespace smoothpoly {

namespace {

u64 abs_term(i64 b, i64 n)
{
    const i128 v = static_cast<i128>(n) * n + b;
    return static_cast<u64>(v < 0 ? -v : v);
}

void check_b(i64 b)
{
    if (b <= 0 && isqrt(static_cast<u64>(-b)) * isqrt(static_cast<u64>(-b)) == static_cast<u64>(-b))
        throw DomainError("-b = " + std::to_string(-b) + " is a square; n^2 + b needs -b not an integer square");
    if (b > kPrimDivMaxB || b < -kPrimDivMaxB) throw ScaleError("|b| exceeds 1e6");
}

i64 abs_b(i64 b) { return b < 0 ? -b : b; }

// Definition scan for one n: some prime of A_n divides no earlier term.
bool direct_scan(i64 b, i64 n, SequenceStart start)
{
    for (const auto& [d, e] : factorize(abs_term(b, n))) {
        bool fresh = true;
        for (i64 m = static_cast<i64>(start); m < n && fresh; ++m)
            fresh = abs_term(b, m) % d != 0;
        if (fresh) return true;
    }
    return false;
}

}  // namespace

const char* to_string(PrimDivMethod method)
{
    return method == PrimDivMethod::criterion ? "criterion" : "direct";
}

FactoredPoly shifted_square(i64 b)
{
    check_b(b);
    const std::string text = b < 0 ? "t^2-" + std::to_string(-b) : "t^2+" + std::to_string(b);
    return build_factored({parse_poly(text)});
}

PrimDivRecord has_primitive_divisor(i64 b, i64 n, SequenceStart start)
{
    check_b(b);
    if (n < 1) throw DomainError("n must be >= 1");
    if (n > 1000000000) throw ScaleError("n exceeds 1e9");
    PrimDivRecord r;
    r.b = b;
    r.n = n;
    r.pplus = largest_prime_factor(abs_term(b, n));
    if (n > abs_b(b)) {
        r.method = PrimDivMethod::criterion;
        r.has_primitive = r.pplus > static_cast<u128>(2 * n);
    } else {
        r.method = PrimDivMethod::direct;
        r.has_primitive = direct_scan(b, n, start);
    }
    return r;
}

std::vector<PrimDivRecord> primdiv_records(i64 b, i64 x, SequenceStart start, const SieveOptions& opts)
{
    check_b(b);
    if (x < 1) throw DomainError("x must be >= 1");
    if (x > kPrimDivMaxX) throw ScaleError("x exceeds 1e7");
    std::vector<PrimDivRecord> out;
    out.reserve(static_cast<std::size_t>(x));
    const i64 edge = std::min(x, abs_b(b));
    for (i64 n = 1; n <= edge; ++n) out.push_back(has_primitive_divisor(b, n, start));
    if (x > edge) {
        const auto table = pplus_range(shifted_square(b), edge + 1, x, static_cast<u64>(x + abs_b(b) + 1), opts);
        for (i64 n = edge + 1; n <= x; ++n) {
            PrimDivRecord r;
            r.b = b;
            r.n = n;
            r.pplus = table.pplus_at(n);
            r.method = PrimDivMethod::criterion;
            r.has_primitive = r.pplus > static_cast<u128>(2 * n);
            out.push_back(r);
        }
    }
    return out;
}

u64 r_b(i64 b, i64 x, SequenceStart start, const SieveOptions& opts)
{
    u64 count = 0;
    for (const auto& r : primdiv_records(b, x, start, opts)) count += r.has_primitive;
    return count;
}

std::vector<u64> n_arctan_prefix(i64 x, const SieveOptions& opts)
{
    if (x < 1) throw DomainError("x must be >= 1");
    if (x > kPrimDivMaxX) throw ScaleError("x exceeds 1e7");
    const auto table = pplus_table(build_factored({parse_poly("t^2+1")}), x, static_cast<u64>(x) + 2, opts);
    std::vector<u64> prefix(static_cast<std::size_t>(x) + 1, 0);
    prefix[1] = 1;
    for (i64 n = 2; n <= x; ++n)
        prefix[static_cast<std::size_t>(n)] = prefix[static_cast<std::size_t>(n - 1)] + (table.pplus_at(n) > static_cast<u128>(2 * n));
    return prefix;
}

ArctanCount n_arctan(i64 x, const SieveOptions& opts)
{
    ArctanCount c;
    c.count = n_arctan_prefix(x, opts).back();
    return c;
}

Prop63Report verify_prop63(i64 b, i64 x, const SieveOptions& opts)
{
    if (x < 3) throw DomainError("verify_prop63: x must be >= 3");
    Prop63Report r;
    r.b = b;
    r.x = x;
    r.r_b = r_b(b, x, SequenceStart::one, opts);
    r.psi = psi(shifted_square(b), x, static_cast<long double>(x), opts).psi;
    r.non_smooth = static_cast<u64>(x) - r.psi;
    r.residual = r.r_b > r.non_smooth ? r.r_b - r.non_smooth : r.non_smooth - r.r_b;
    const long double lx = std::log(static_cast<long double>(x));
    r.ratio = r.residual * lx / (x * std::log(lx));
    return r;
}

void write_csv(std::ostream& out, const std::vector<PrimDivRecord>& records)
{
    out << "b,n,pplus,has_primitive,method\n";
    for (const auto& r : records)
        out << r.b << ',' << r.n << ',' << to_string(r.pplus) << ',' << (r.has_primitive ? 1 : 0) << ','
            << to_string(r.method) << '\n';
}

namespace oracle {

std::vector<bool> primitive_by_definition(i64 b, i64 x, SequenceStart start)
{
    check_b(b);
    if (x > 20000) throw ScaleError("primitive_by_definition: x exceeds 2e4");
    std::unordered_set<u64> seen;
    if (start == SequenceStart::zero)
        for (const auto& [p, e] : factorize(abs_term(b, 0))) seen.insert(p);
    std::vector<bool> out(static_cast<std::size_t>(x) + 1, false);
    for (i64 n = 1; n <= x; ++n) {
        u64 v = abs_term(b, n);
        std::vector<u64> primes;
        for (u64 p = 2; p * p <= v; ++p)
            if (v % p == 0) {
                primes.push_back(p);
                while (v % p == 0) v /= p;
            }
        if (v > 1) primes.push_back(v);
        bool fresh = false;
        for (u64 p : primes) fresh = fresh || !seen.count(p);
        out[static_cast<std::size_t>(n)] = fresh;
        seen.insert(primes.begin(), primes.end());
    }
    return out;
}

}  // namespace oracle

}  // namespace smoothpoly
