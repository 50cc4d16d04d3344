#include "doctest.h"

#include <cmath>
#include <set>

#include "smoothpoly/quadfield.hpp"

using namespace smoothpoly;

namespace {

std::set<i64> counted(const CAlphaResult& r)
{
    std::set<i64> out;
    for (const auto& w : r.witnesses) out.insert(w.n);
    return out;
}

}  // namespace

TEST_CASE("context validation")
{
    CHECK_NOTHROW(QuadContext(2));
    CHECK_NOTHROW(QuadContext(3));
    CHECK_NOTHROW(QuadContext(6));
    CHECK_THROWS_AS(QuadContext(5), DomainError);   // 1 mod 4
    CHECK_THROWS_AS(QuadContext(4), DomainError);   // square
    CHECK_THROWS_AS(QuadContext(18), DomainError);  // not squarefree
    CHECK_THROWS_AS(QuadContext(1), DomainError);
    QuadContext ctx(2);
    CHECK(ctx.disc() == 8);
    CHECK(ctx.poly().eval(3L) == 7);
}

TEST_CASE("prime classification")
{
    QuadContext two(2);
    auto c = classify_prime(two, 7);
    CHECK(c.kind == SplitKind::split);
    CHECK(c.roots == std::vector<u64>{3, 4});
    CHECK(c.in_P_K);
    c = classify_prime(two, 2);
    CHECK(c.kind == SplitKind::ramified);
    CHECK_FALSE(c.in_P_K);
    c = classify_prime(two, 5);
    CHECK(c.kind == SplitKind::inert);
    CHECK(c.roots.empty());
    CHECK_THROWS_AS(classify_prime(two, 9), DomainError);

    QuadContext three(3);
    c = classify_prime(three, 2);
    CHECK(c.kind == SplitKind::ramified);
    CHECK(c.roots == std::vector<u64>{1});
    CHECK(classify_prime(three, 3).roots == std::vector<u64>{0});
}

TEST_CASE("classification invariants against residue scan")
{
    for (i64 m : {2, 3, 6, 7, 10, 11}) {
        QuadContext ctx(m);
        for (u64 p : primes_up_to(600)) {
            const auto c = classify_prime(ctx, p);
            std::vector<u64> scan;
            for (u64 u = 0; u < p; ++u)
                if ((u * u) % p == static_cast<u64>(m) % p) scan.push_back(u);
            CAPTURE(m);
            CAPTURE(p);
            CHECK(c.roots == scan);
            CHECK(c.in_P_K == (c.kind == SplitKind::split));
            if (c.kind == SplitKind::split) CHECK(c.roots[0] + c.roots[1] == p);
            CHECK((c.kind == SplitKind::ramified) == ((2 * static_cast<u64>(m)) % p == 0));
        }
    }
}

TEST_CASE("Tonelli-Shanks on primes with large 2-adic part")
{
    for (u64 p : {17ull, 97ull, 257ull, 65537ull, 998244353ull, 4294967291ull}) {
        for (u64 a : {2ull, 3ull, 5ull, 6ull, 10ull}) {
            if (powmod(a, (p - 1) / 2, p) != 1) {
                CHECK_THROWS_AS(sqrt_mod(a, p), DomainError);
                continue;
            }
            const u64 r = sqrt_mod(a, p);
            CHECK(mulmod(r, r, p) == a % p);
        }
    }
}

TEST_CASE("c_alpha small values")
{
    QuadContext ctx(2);
    CHECK(c_alpha(ctx, 1).count == 0);
    CHECK(c_alpha(ctx, 2).count == 1);
    CHECK(c_alpha(ctx, 3).count == 2);
    CHECK_THROWS_AS(c_alpha(ctx, 0), DomainError);
    CHECK_THROWS_AS(c_alpha(ctx, kCAlphaMaxX + 1), ScaleError);
}

TEST_CASE("c_alpha matches the class-count oracle")
{
    for (i64 m : {2, 3, 6, 7}) {
        QuadContext ctx(m);
        for (i64 x : {1, 2, 3, 5, 10, 37, 100, 500, 2000}) {
            CAPTURE(m);
            CAPTURE(x);
            const auto fast = c_alpha(ctx, x);
            const auto slow = oracle::unique_class_count(ctx, 0, x, ExclusionStart::one);
            CHECK(fast.count == slow.count);
            CHECK(counted(fast) == counted(slow));
        }
    }
}

TEST_CASE("windowed count matches the oracle")
{
    for (i64 m : {2, 3, 6}) {
        QuadContext ctx(m);
        for (auto [N, M] : std::vector<std::pair<i64, i64>>{{0, 10}, {100, 50}, {1000, 1}, {5000, 300}, {20000, 20}}) {
            for (auto start : {ExclusionStart::zero, ExclusionStart::one}) {
                CAPTURE(m);
                CAPTURE(N);
                CAPTURE(M);
                const auto fast = windowed_cassels(ctx, N, M, start);
                const auto slow = oracle::unique_class_count(ctx, N, M, start);
                CHECK(fast.count == slow.count);
                CHECK(counted(fast) == counted(slow));
            }
        }
        CHECK(windowed_cassels(ctx, 100, 0).count == 0);
    }
}

TEST_CASE("N = 0 window differs from c_alpha only through k = 0")
{
    for (i64 m : {2, 3, 6, 7}) {
        QuadContext ctx(m);
        for (i64 x : {10, 100, 1000}) {
            const auto with_zero = counted(windowed_cassels(ctx, 0, x, ExclusionStart::zero));
            const auto without = counted(c_alpha(ctx, x));
            CHECK(windowed_cassels(ctx, 0, x, ExclusionStart::one).count == without.size());
            // Adding k = 0 can only remove n whose unique class is shared with 0.
            for (i64 n : with_zero) CHECK(without.count(n) == 1);
            for (i64 n : without)
                if (!with_zero.count(n)) CHECK(m % static_cast<i64>(largest_prime_factor(static_cast<u64>(std::abs(n * n - m)))) == 0);
        }
    }
}

TEST_CASE("C_alpha against the non-smooth count")
{
    QuadContext ctx(2);
    const auto small = verify_prop54(ctx, 10);
    CHECK(small.c_alpha == oracle::unique_class_count(ctx, 0, 10, ExclusionStart::one).count);
    // Split primes up to 10 for m = 2 are 7 only; the two sides differ by at most that.
    CHECK(small.residual <= 1);
    double previous = 1;
    for (i64 x : {1000, 10000, 100000}) {
        const auto r = verify_prop54(ctx, x);
        CAPTURE(x);
        CHECK(r.non_smooth == static_cast<u64>(x) - r.psi);
        CHECK(r.ratio <= 4);
        const double rel = static_cast<double>(r.residual) / x;
        CHECK(rel < previous);
        previous = rel;
    }
}

TEST_CASE("sieve and split-prime paths agree")
{
    for (i64 m : {2, 3, 6}) {
        QuadContext ctx(m);
        const auto rep = lemma52_check(ctx, 2000, {static_cast<u64>(2 * m + 1), 100, 1000, 2000});
        CAPTURE(m);
        for (u64 miss : rep.mismatches) CHECK(miss == 0);
        CHECK(rep.threshold <= static_cast<u64>(2 * m));
    }
    // Below the threshold ramified primes make the sides differ.
    const auto six = lemma52_check(QuadContext(6), 100, {2});
    CHECK(six.mismatches[0] > 0);
}

TEST_CASE("ideal classes modulo prime powers are single residue classes")
{
    // The ideal above p^v on which sqrt m ≡ r has Z-basis {p^v, sqrt m - r},
    // so a + b sqrt m lies in it iff p^v | a + b r.
    for (i64 m : {2, 3, 7}) {
        QuadContext ctx(m);
        for (u64 p : primes_up_to(60)) {
            if (classify_prime(ctx, p).kind != SplitKind::split) continue;
            for (unsigned v = 1; v <= 3; ++v) {
                const u64 q = *checked_pow(p, v);
                const auto lifted = lift_roots(ctx.poly(), p, v);
                REQUIRE(lifted.residues.size() == 2);
                std::set<i64> covered;
                for (u64 r : lifted.residues) {
                    std::set<u64> residues;
                    for (i64 n = 1; n <= 3000; ++n)
                        if ((static_cast<u64>(n) + r) % q == 0) {
                            residues.insert(static_cast<u64>(n) % q);
                            CHECK(covered.insert(n).second);
                        }
                    CHECK(residues.size() <= 1);
                }
                for (i64 n = 1; n <= 3000; ++n) {
                    const bool divides = (static_cast<u64>(n) * n + q * q - static_cast<u64>(m) % q) % q == 0;
                    CHECK(divides == (covered.count(n) == 1));
                }
            }
        }
    }
}

TEST_CASE("norm identity")
{
    for (i64 m : {2, 3, 6}) {
        const long double s = std::sqrt(static_cast<long double>(m));
        for (i64 n = 1; n <= 1000; ++n) {
            const long double lhs = std::abs((n + s) * (n - s));
            const long double rhs = std::abs(static_cast<long double>(n * n - m));
            CHECK(std::abs(lhs - rhs) <= 1e-12L * rhs + 1e-15L);
        }
    }
}

TEST_CASE("inert primes never divide n^2 - m")
{
    for (i64 m : {2, 3, 6}) {
        QuadContext ctx(m);
        for (u64 p : primes_up_to(500)) {
            if (classify_prime(ctx, p).kind != SplitKind::inert) continue;
            for (i64 n = 1; n <= 10000; ++n)
                if ((static_cast<u64>(n % static_cast<i64>(p)) * (n % static_cast<i64>(p)) + p - static_cast<u64>(m) % p) % p == 0) {
                    FAIL("inert prime divides n^2 - m");
                }
        }
    }
}
