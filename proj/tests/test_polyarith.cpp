#include "doctest.h"
#include "support.hpp"

#include <random>

using namespace smoothpoly;
using testing::factors;
using testing::poly;

TEST_CASE("parse symbolic and list forms")
{
    auto f = parse_poly("[1,0,1]");
    CHECK(f.degree() == 2);
    CHECK(f.to_string() == "t^2+1");
    auto g = parse_poly("t^2-2");
    CHECK(g.coeffs() == std::vector<mpz_class>{-2, 0, 1});
    CHECK(parse_poly("-3*t^3 + t - 7").coeffs() == std::vector<mpz_class>{-7, 1, 0, -3});
    CHECK(parse_poly("t").degree() == 1);
    CHECK_THROWS_AS(parse_poly("[0]"), DomainError);
    CHECK_THROWS_AS(parse_poly("t^^2"), DomainError);
    CHECK_THROWS_AS(parse_poly(""), DomainError);
    CHECK(parse_factor_list("[[1,0,1],\"t\"]").size() == 2);
}

TEST_CASE("exact evaluation")
{
    CHECK(parse_poly("t^2+1").eval(3) == 10);
    CHECK(parse_poly("t^2-2").eval(1) == -1);
    CHECK(parse_poly("2*t^2+3*t+1").eval(4) == 45);
    mpz_class big("100000000000000000000");
    CHECK(parse_poly("t^3").eval(big) == big * big * big);
}

TEST_CASE("evaluation is periodic modulo k")
{
    std::mt19937_64 rng(7);
    for (const auto& f : testing::standard_polys()) {
        for (int trial = 0; trial < 200; ++trial) {
            const long a = static_cast<long>(rng() % 2001) - 1000;
            const long b = static_cast<long>(rng() % 50);
            const long k = 1 + static_cast<long>(rng() % 97);
            mpz_class diff = f.eval(a + b * k) - f.eval(a);
            CHECK(mpz_divisible_ui_p(diff.get_mpz_t(), static_cast<unsigned long>(k)));
        }
    }
}

TEST_CASE("factored input validation")
{
    auto f = poly("t^2+1");
    CHECK(f.g() == 1);
    CHECK(f.d() == 2);
    CHECK(f.discriminant_abs() == 4);

    auto h = factors({"t", "t^2+1"});
    CHECK(h.g() == 2);
    CHECK(h.d() == 3);
    CHECK(h.discriminant_abs() == 4);
    // Direct cubic formula for t^3 + p t + q: -4p^3 - 27q^2.
    CHECK(abs(discriminant(h.product())) == 4);

    CHECK_THROWS_AS(poly("t^2-1"), DomainError);
    CHECK_THROWS_AS(factors({"t", "t"}), DomainError);
    CHECK_THROWS_AS(poly("2*t^2+4"), DomainError);
    CHECK_THROWS_AS(poly("t^3-8"), DomainError);

    auto q = poly("t^4+1");
    CHECK(q.has_asserted_factor());
    CHECK_FALSE(f.has_asserted_factor());

    auto neg = poly("-t^2+3");
    CHECK(neg.sign_flipped());
    CHECK(neg.product().leading() > 0);
}

TEST_CASE("discriminant multiplicativity")
{
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"t^2+1", "t^2-2"}, {"t+1", "t^2+2"}, {"t^2+t+1", "t^3-2"}, {"2*t+3", "t^2-5"}};
    for (const auto& [a, b] : pairs) {
        auto fa = parse_poly(a), fb = parse_poly(b);
        mpz_class lhs = discriminant(fa * fb);
        mpz_class r = resultant(fa, fb);
        CHECK(lhs == discriminant(fa) * discriminant(fb) * r * r);
    }
    // Quadratic and cubic closed forms.
    CHECK(discriminant(parse_poly("3*t^2+5*t-7")) == 25 + 4 * 3 * 7);
    CHECK(discriminant(parse_poly("t^3-2")) == -27 * 4);
}

TEST_CASE("threshold T0")
{
    CHECK(t0(poly("t^2+1")) == 2);
    CHECK(t0(poly("t^2-2")) == 2);
    CHECK(t0(poly("t-10")) == 11);
    CHECK_THROWS(t0(parse_poly("[5]")));

    // Beyond T0 values are increasing and exceed 1: scan a window.
    for (const auto& f : testing::standard_polys()) {
        const long start = t0(f) + 1;
        mpz_class prev = f.eval(start);
        CHECK(prev > 1);
        for (long n = start + 1; n < start + 500; ++n) {
            mpz_class cur = f.eval(n);
            CHECK(cur > prev);
            prev = cur;
        }
    }
    auto wiggly = parse_poly("t^3-30*t^2+200*t");
    const long w = t0(wiggly);
    for (long n = w + 1; n < w + 200; ++n) CHECK(wiggly.eval(n + 1) > wiggly.eval(n));
    CHECK(wiggly.eval(w + 1) > 1);
}

TEST_CASE("rational roots")
{
    auto roots = rational_roots(parse_poly("6*t^2-5*t+1"));
    CHECK(roots.size() == 2);
    CHECK(rational_roots(parse_poly("t^2+1")).empty());
}
