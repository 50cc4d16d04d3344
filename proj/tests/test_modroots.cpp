#include "doctest.h"
#include "support.hpp"

#include <cmath>
#include <map>

#include "smoothpoly/modroots.hpp"

using namespace smoothpoly;
using testing::factors;
using testing::poly;

namespace {

// ω_f(k) by scanning every residue; k <= 10^6.
u64 omega_scan(const FactoredPoly& f, u64 k)
{
    const auto c = f.product().reduce_mod(k);
    u64 count = 0;
    for (u64 u = 0; u < k; ++u) {
        u128 acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * u + *it) % k;
        count += acc == 0;
    }
    return count;
}

std::vector<u64> scan_residues(const FactoredPoly& f, u64 k)
{
    const auto c = f.product().reduce_mod(k);
    std::vector<u64> out;
    for (u64 u = 0; u < k; ++u) {
        u128 acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * u + *it) % k;
        if (acc == 0) out.push_back(u);
    }
    return out;
}

}  // namespace

TEST_CASE("roots modulo a prime")
{
    auto f = poly("t^2+1");
    CHECK(roots_mod_p(f, 5).residues == std::vector<u64>{2, 3});
    CHECK(roots_mod_p(f, 3).residues.empty());
    CHECK(roots_mod_p(f, 2).residues == std::vector<u64>{1});
    CHECK_THROWS_AS(roots_mod_p(f, 15), DomainError);
}

TEST_CASE("roots agree with a residue scan for p < 1000")
{
    auto polys = testing::standard_polys();
    polys.push_back(poly("3*t^2+t+5"));
    polys.push_back(poly("t^4+1"));
    for (const auto& f : polys)
        for (u64 p : primes_up_to(1000)) {
            if (p >= 1000) break;
            REQUIRE(roots_mod_p(f, p).residues == scan_residues(f, p));
        }
}

TEST_CASE("roots for larger primes satisfy the polynomial")
{
    auto f = poly("t^2+1");
    for (u64 p : {1000000007ull, 998244353ull, 4294967291ull}) {
        auto rs = roots_mod_p(f, p);
        CHECK(rs.size() == (p % 4 == 1 ? 2u : 0u));
        for (u64 u : rs.residues) CHECK(f.product().eval_mod(u, p) == 0);
    }
    // t^2 - 2 has roots exactly when 2 is a quadratic residue (Euler's criterion).
    auto g = poly("t^2-2");
    for (u64 p : {1000000007ull, 998244353ull, 4294967291ull, 65537ull}) {
        const bool residue = powmod(2, (p - 1) / 2, p) == 1;
        CHECK(roots_mod_p(g, p).size() == (residue ? 2u : 0u));
    }
}

TEST_CASE("Hensel lifting")
{
    auto f = poly("t^2+1");
    CHECK(lift_roots(f, 5, 2).residues == std::vector<u64>{7, 18});
    CHECK(lift_roots(f, 2, 2).residues.empty());
    auto t = poly("t");
    for (u64 p : {2ull, 3ull, 7ull}) CHECK(lift_roots(t, p, 3).residues == std::vector<u64>{0});

    // Singular roots: t(t^2+1) at p = 2 and t^2-2 at p = 2.
    for (const auto& g : testing::standard_polys())
        for (u64 p : {2ull, 3ull, 5ull, 7ull, 13ull})
            for (unsigned v = 1; v <= 5; ++v) {
                const u64 m = *checked_pow(p, v);
                if (m > 200000) continue;
                REQUIRE(lift_roots(g, p, v).residues == scan_residues(g, m));
            }
}

TEST_CASE("omega values")
{
    auto f = poly("t^2+1");
    CHECK(omega(f, 10) == 2);
    CHECK(omega(f, 4) == 0);
    CHECK(omega(f, 1) == 1);
    CHECK_THROWS_AS(omega(f, 0), DomainError);
    CHECK_THROWS_AS(omega(f, kMaxOmegaModulus + 1), ScaleError);
}

TEST_CASE("von Mangoldt marker")
{
    auto m8 = mangoldt(8);
    REQUIRE(m8);
    CHECK(m8->p == 2);
    CHECK(m8->v == 3);
    CHECK(mangoldt_value(8) == doctest::Approx(std::log(2.0)));
    CHECK_FALSE(mangoldt(12));
    CHECK_FALSE(mangoldt(1));
}

TEST_CASE("omega is multiplicative on coprime arguments")
{
    for (const auto& f : {poly("t^2+1"), poly("t^2-2"), factors({"t", "t^2+1"})}) {
        std::vector<u64> table(10001);
        for (u64 k = 1; k <= 10000; ++k) table[k] = omega(f, k);
        for (u64 a = 1; a <= 100; ++a)
            for (u64 b = 1; a * b <= 10000; ++b)
                if (gcd(a, b) == 1) REQUIRE(table[a * b] == table[a] * table[b]);
        // Direct scans for small k.
        for (u64 k = 1; k <= 400; ++k) REQUIRE(table[k] == omega_scan(f, k));
    }
}

TEST_CASE("Huxley bound and Hensel stability")
{
    for (const auto& f : testing::standard_polys()) {
        const long double global = global_root_bound(f);
        for (u64 p : primes_up_to(1000)) {
            if (p > 1000) break;
            const bool divides_disc = valuation(f.discriminant_abs(), p) > 0;
            const u64 base = omega(f, p);
            for (unsigned v = 1; v <= 4; ++v) {
                const u64 w = lift_roots(f, p, v).size();
                CHECK(w <= huxley_bound(f, p) + 1e-9L);
                CHECK(w <= global + 1e-9L);
                if (!divides_disc) CHECK(w == base);
            }
        }
    }
}

TEST_CASE("product bound over prime-power tuples")
{
    // ω_f(Π p_j^{v_j}) <= (d sqrt Δ)^{m-|S|} Π_{j in S} ω_f(p_j^{v_j}).
    std::vector<u64> prime_powers;
    for (u64 p : primes_up_to(50)) {
        if (p > 50) break;
        for (unsigned v = 1; v <= 3; ++v) prime_powers.push_back(*checked_pow(p, v));
    }
    for (const auto& f : testing::standard_polys()) {
        const long double big = global_root_bound(f);
        std::map<u64, u64> scanned;
        auto lhs_of = [&](u64 k) {
            if (k <= 1000000) {
                auto it = scanned.find(k);
                if (it == scanned.end()) it = scanned.emplace(k, omega_scan(f, k)).first;
                return it->second;
            }
            return omega(f, k);
        };
        auto check = [&](std::vector<u64> tuple) {
            u64 k = 1;
            for (u64 q : tuple) {
                if (k > (1ull << 40) / q) return;
                k *= q;
            }
            long double rhs = 1;
            for (u64 q : tuple) {
                const u64 p = factorize(q).front().p;
                if (valuation(f.discriminant_abs(), p) == 0)
                    rhs *= omega(f, q);
                else
                    rhs *= big;
            }
            REQUIRE(lhs_of(k) <= rhs + 1e-9L);
        };
        for (std::size_t a = 0; a < prime_powers.size(); ++a) {
            check({prime_powers[a]});
            for (std::size_t b = a; b < prime_powers.size(); ++b) {
                check({prime_powers[a], prime_powers[b]});
                for (std::size_t c = b; c < prime_powers.size(); c += 3) check({prime_powers[a], prime_powers[b], prime_powers[c]});
            }
        }
    }
}

TEST_CASE("root cache matches direct computation")
{
    auto f = factors({"t+1", "t^2+2"});
    RootCache cache(f);
    for (u64 k = 1; k <= 3000; ++k) {
        auto fac = k == 1 ? Factorization{} : factorize(k);
        CHECK(cache.omega_of_factors(fac) == omega(f, k));
    }
}
