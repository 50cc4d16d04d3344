#include "smoothpoly/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace smoothpoly {

u64 powmod(u64 base, u64 exp, u64 m)
{
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 invmod(u64 a, u64 m)
{
    i128 t = 0, new_t = 1;
    i128 r = m, new_r = a % m;
    while (new_r != 0) {
        i128 q = r / new_r;
        i128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw DomainError("invmod: argument not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

bool is_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is exact below 3.3e24.
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 isqrt(u64 n)
{
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

std::optional<u64> checked_pow(u64 base, unsigned exp)
{
    u128 acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > UINT64_MAX) return std::nullopt;
    }
    return static_cast<u64>(acc);
}

namespace {

// Brent's variant of Pollard rho; n odd composite.
u64 rho_factor(u64 n)
{
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = step(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = step(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                g = gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(u64 n, std::map<u64, unsigned>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = rho_factor(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Factorization factorize(u64 n)
{
    if (n == 0) throw DomainError("factorize: zero has no factorization");
    std::map<u64, unsigned> acc;
    for (u64 p : primes_up_to(1000)) {
        if (p * p > n) break;
        while (n % p == 0) {
            ++acc[p];
            n /= p;
        }
    }
    factor_into(n, acc);
    Factorization result;
    result.reserve(acc.size());
    for (auto [p, v] : acc) result.push_back({p, v});
    return result;
}

u64 largest_prime_factor(u64 n)
{
    auto f = factorize(n);
    return f.empty() ? 1 : f.back().p;
}

std::span<const std::uint32_t> primes_up_to(std::uint32_t limit)
{
    static std::mutex mutex;
    // Superseded tables are retained so spans handed out earlier stay valid.
    static std::vector<std::unique_ptr<std::vector<std::uint32_t>>> generations;
    static std::uint32_t sieved = 0;

    std::lock_guard lock(mutex);
    if (limit > sieved || generations.empty()) {
        std::uint32_t target = std::max<std::uint32_t>({limit, 1u << 16,
            static_cast<std::uint32_t>(std::min<u64>(2ull * sieved, UINT32_MAX - 1))});
        std::vector<bool> composite(static_cast<std::size_t>(target) + 1, false);
        auto table = std::make_unique<std::vector<std::uint32_t>>();
        for (u64 i = 2; i <= target; ++i) {
            if (composite[i]) continue;
            table->push_back(static_cast<std::uint32_t>(i));
            for (u64 j = i * i; j <= target; j += i) composite[j] = true;
        }
        generations.push_back(std::move(table));
        sieved = target;
    }
    const auto& table = *generations.back();
    auto end = std::upper_bound(table.begin(), table.end(), limit);
    return {table.data(), static_cast<std::size_t>(end - table.begin())};
}

std::optional<PrimePower> mangoldt(u64 k)
{
    if (k < 2) return std::nullopt;
    auto f = factorize(k);
    if (f.size() != 1) return std::nullopt;
    return f.front();
}

long double mangoldt_value(u64 k)
{
    auto pp = mangoldt(k);
    return pp ? std::log(static_cast<long double>(pp->p)) : 0.0L;
}

std::string to_string(u128 v)
{
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string(i128 v)
{
    if (v < 0) return "-" + to_string(static_cast<u128>(-v));
    return to_string(static_cast<u128>(v));
}

}  // namespace smoothpoly
