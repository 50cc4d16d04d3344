#include "smoothpoly/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <ostream>
#include <thread>

namespace smoothpoly {

namespace {

const mpz_class kFastPathLimit = mpz_class(1) << 126;
constexpr u64 kMaxSievePrime = u64{1} << 31;

// Cofactor operations for the two storage types.
bool is_zero(const u128& r) { return r == 0; }
bool is_zero(const mpz_class& r) { return r == 0; }
bool divisible(const u128& r, u64 p) { return r % p == 0; }
bool divisible(const mpz_class& r, u64 p) { return mpz_divisible_ui_p(r.get_mpz_t(), p) != 0; }
void divide(u128& r, u64 p) { r /= p; }
void divide(mpz_class& r, u64 p) { mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p); }
bool is_one(const u128& r) { return r == 1; }
bool is_one(const mpz_class& r) { return r == 1; }
bool at_most(const u128& r, u64 y) { return r <= y; }
bool at_most(const mpz_class& r, u64 y) { return mpz_cmp_ui(r.get_mpz_t(), y) <= 0; }
u64 isqrt_of(const u128& r)
{
    if (r <= UINT64_MAX) return isqrt(static_cast<u64>(r));
    mpz_class m(to_string(r));
    mpz_sqrt(m.get_mpz_t(), m.get_mpz_t());
    return m.fits_ulong_p() ? m.get_ui() : UINT64_MAX;
}
u64 isqrt_of(const mpz_class& r)
{
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), r.get_mpz_t());
    return s.fits_ulong_p() ? s.get_ui() : UINT64_MAX;
}
i128 to_i128(const mpz_class& v)
{
    const std::string digits = mpz_class(abs(v)).get_str();
    i128 out = 0;
    for (char c : digits) out = out * 10 + (c - '0');
    return v < 0 ? -out : out;
}

i128 eval_fast(const std::vector<i128>& c, i64 n)
{
    i128 acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * n + *it;
    return acc;
}

struct SegmentResult {
    std::vector<std::uint8_t> flags;
    std::vector<u128> pplus;
    u64 count = 0;
    bool bound_violated = false;
};

enum class Mode { smoothness, pplus };

template <class Int>
SegmentResult sieve_segment(const FactoredPoly& f, i64 a, i64 b, u64 ylimit, Mode mode, RootCache& cache)
{
    const std::size_t len = static_cast<std::size_t>(b - a + 1);
    std::vector<Int> r(len);
    std::vector<u64> biggest(len, 1);
    Int seg_max = 0;
    if constexpr (std::is_same_v<Int, u128>) {
        std::vector<i128> c;
        for (const auto& coeff : f.product().coeffs()) c.push_back(to_i128(coeff));
        for (std::size_t i = 0; i < len; ++i) {
            i128 v = eval_fast(c, a + static_cast<i64>(i));
            r[i] = static_cast<u128>(v < 0 ? -v : v);
            seg_max = std::max(seg_max, r[i]);
        }
    } else {
        for (std::size_t i = 0; i < len; ++i) {
            r[i] = abs(f.eval(mpz_class(static_cast<long>(a + static_cast<i64>(i)))));
            if (r[i] > seg_max) seg_max = r[i];
        }
    }

    SegmentResult out;
    const u64 root_max = isqrt_of(seg_max);
    // Primes above sqrt(max |f(n)|) can only survive as a single prime cofactor.
    const u64 limit = std::min(ylimit, root_max);
    if (mode == Mode::pplus && ylimit < root_max) out.bound_violated = true;
    if (limit > kMaxSievePrime) throw ScaleError("sieve would need primes beyond 2^31");

    for (u64 p : primes_up_to(static_cast<std::uint32_t>(limit))) {
        for (u64 u : cache.roots(p)) {
            const u64 am = static_cast<u64>(a) % p;
            u64 start = (u + p - am) % p;
            for (std::size_t i = start; i < len; i += p) {
                Int& v = r[i];
                if (is_zero(v)) continue;
                while (divisible(v, p)) divide(v, p);
                biggest[i] = p;
            }
        }
    }

    out.flags.assign(len, 0);
    if (mode == Mode::pplus) out.pplus.assign(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        const Int& v = r[i];
        bool smooth;
        if (is_zero(v)) {
            smooth = false;
        } else if (is_one(v)) {
            smooth = true;
        } else {
            // v > 1 has no prime factor <= limit.
            smooth = limit < ylimit && at_most(v, ylimit);
        }
        out.flags[i] = smooth ? 1 : 0;
        out.count += smooth ? 1 : 0;
        if (mode == Mode::pplus) {
            if constexpr (std::is_same_v<Int, u128>) {
                if (is_zero(v)) out.pplus[i] = kPplusInfinity;
                else if (is_one(v)) out.pplus[i] = biggest[i];
                else out.pplus[i] = v;  // prime, and larger than every sieved prime
            }
        }
    }
    return out;
}

SmoothTable run_sieve(const FactoredPoly& f, i64 lo, i64 hi, long double y, u64 ylimit, Mode mode, const SieveOptions& opts)
{
    if (lo < 0) throw DomainError("sieve range must start at n >= 0");
    SmoothTable table{f, lo, hi, y, {}, std::nullopt, 0};
    if (hi < lo) {
        if (mode == Mode::pplus) table.pplus.emplace();
        return table;
    }
    const bool fast = f.product().height_bound(mpz_class(static_cast<long>(std::max<i64>(hi, 1)))) < kFastPathLimit;
    if (mode == Mode::pplus && !fast) throw ScaleError("pplus tables require |f(n)| < 2^126");

    std::unique_ptr<RootCache> own_cache;
    RootCache* cache = opts.cache;
    if (!cache) {
        own_cache = std::make_unique<RootCache>(f);
        cache = own_cache.get();
    }

    const std::size_t seg = std::max<std::size_t>(opts.segment_size, 1);
    const std::size_t total = static_cast<std::size_t>(hi - lo + 1);
    const std::size_t nseg = (total + seg - 1) / seg;
    std::vector<SegmentResult> results(nseg);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t s = next.fetch_add(1);
            if (s >= nseg) return;
            const i64 a = lo + static_cast<i64>(s * seg);
            const i64 b = std::min<i64>(hi, a + static_cast<i64>(seg) - 1);
            try {
                results[s] = fast ? sieve_segment<u128>(f, a, b, ylimit, mode, *cache)
                                  : sieve_segment<mpz_class>(f, a, b, ylimit, mode, *cache);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(nseg)));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    table.flags.reserve(total);
    if (mode == Mode::pplus) table.pplus.emplace().reserve(total);
    for (auto& r : results) {
        if (r.bound_violated)
            throw DomainError("pplus bound " + std::to_string(ylimit) + " is too small: bound^2 must exceed max |f(n)|");
        table.flags.insert(table.flags.end(), r.flags.begin(), r.flags.end());
        if (mode == Mode::pplus) table.pplus->insert(table.pplus->end(), r.pplus.begin(), r.pplus.end());
        table.psi += r.count;
    }
    return table;
}

}  // namespace

u64 SmoothTable::count_up_to(i64 n) const
{
    if (n < lo) return 0;
    const std::size_t end = std::min<std::size_t>(flags.size(), static_cast<std::size_t>(n - lo + 1));
    return static_cast<u64>(std::count(flags.begin(), flags.begin() + static_cast<std::ptrdiff_t>(end), 1));
}

u64 prime_limit(long double y)
{
    if (!(y >= 1)) throw DomainError("smoothness bound y must be >= 1");
    if (y >= 9.2e18L) return static_cast<u64>(INT64_MAX);
    return static_cast<u64>(std::floor(y));
}

long double smoothness_bound(u64 x, long double u)
{
    if (!(u > 0)) throw DomainError("u must be positive");
    const long double y = std::pow(static_cast<long double>(x), 1.0L / u);
    const long double ui = std::round(u);
    if (std::fabs(u - ui) > 0 || ui > 64) return y;
    // Integer u: make floor(y) the exact integer u-th root of x.
    const auto e = static_cast<unsigned>(ui);
    u64 c = static_cast<u64>(std::floor(y));
    while (c > 0 && (!checked_pow(c, e) || *checked_pow(c, e) > x)) --c;
    while (checked_pow(c + 1, e) && *checked_pow(c + 1, e) <= x) ++c;
    if (checked_pow(c, e) && *checked_pow(c, e) == x) return static_cast<long double>(c);
    return std::max(y, static_cast<long double>(c));
}

SmoothTable sieve_range(const FactoredPoly& f, i64 lo, i64 hi, long double y, const SieveOptions& opts)
{
    return run_sieve(f, lo, hi, y, prime_limit(y), Mode::smoothness, opts);
}

SmoothTable psi(const FactoredPoly& f, i64 x, long double y, const SieveOptions& opts)
{
    if (x < 1) throw DomainError("psi: x must be >= 1");
    return sieve_range(f, 1, x, y, opts);
}

SmoothTable pplus_range(const FactoredPoly& f, i64 lo, i64 hi, u64 bound, const SieveOptions& opts)
{
    if (bound < 1) throw DomainError("pplus bound must be >= 1");
    return run_sieve(f, lo, hi, static_cast<long double>(bound), bound, Mode::pplus, opts);
}

SmoothTable pplus_table(const FactoredPoly& f, i64 x, u64 bound, const SieveOptions& opts)
{
    if (x < 1) throw DomainError("pplus_table: x must be >= 1");
    return pplus_range(f, 1, x, bound, opts);
}

mpz_class largest_prime_factor_trial(const mpz_class& v)
{
    mpz_class r = abs(v);
    if (r == 0) return 0;
    mpz_class best = 1;
    for (unsigned long p = 2;; p += (p == 2 ? 1 : 2)) {
        if (mpz_cmp_ui(r.get_mpz_t(), 1) == 0) return best;
        // r has no factor below p, so r < p^2 means r is prime.
        mpz_class p2 = mpz_class(p) * p;
        if (r < p2) return r;
        if (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
            best = p;
            while (mpz_divisible_ui_p(r.get_mpz_t(), p)) mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
        }
    }
}

u64 psi_oracle(const FactoredPoly& f, i64 x, long double y)
{
    if (x > 100000) throw ScaleError("psi_oracle: x exceeds 1e5");
    const u64 ylim = prime_limit(y);
    const mpz_class ybig(std::to_string(ylim));
    u64 count = 0;
    for (i64 n = 1; n <= x; ++n) {
        mpz_class v = f.eval(mpz_class(static_cast<long>(n)));
        if (v == 0) continue;
        if (largest_prime_factor_trial(v) <= ybig) ++count;
    }
    return count;
}

void write_csv(std::ostream& out, const SmoothTable& table)
{
    out << "n,f(n),pplus,smooth\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        const i64 n = table.lo + static_cast<i64>(i);
        out << n << ',' << table.f.eval(mpz_class(static_cast<long>(n))).get_str() << ',';
        if (table.pplus) {
            const u128 p = (*table.pplus)[i];
            out << (p == kPplusInfinity ? std::string("inf") : to_string(p));
        }
        out << ',' << static_cast<int>(table.flags[i]) << '\n';
    }
}

}  // namespace smoothpoly
