#include "doctest.h"
#include "support.hpp"

#include <cmath>

#include "smoothpoly/vw.hpp"

using namespace smoothpoly;
using testing::factors;
using testing::poly;

namespace {

bool close(long double a, long double b)
{
    return std::abs(a - b) <= 1e-9L * std::max<long double>(1, std::abs(b));
}

void check_against_literal(const VWInstance& inst)
{
    CAPTURE(inst.x);
    CAPTURE(inst.z);
    CAPTURE(static_cast<double>(inst.y));
    VWContext ctx(inst);
    const auto single = ctx.prop21();
    const auto lit = oracle::vw_literal(inst);
    CHECK(single.lhs == lit.lhs);
    CHECK(close(single.V, lit.V));
    CHECK(close(single.W, lit.W));
    CHECK(close(single.V_within_h, lit.V_within_h));
    CHECK(close(single.W_within_h, lit.W_within_h));
    CHECK(single.verdict_2_1);
    CHECK(single.verdict_2_2);
    if (lit.log_ratio > 0) {
        const auto split = ctx.prop32(inst.depth);
        REQUIRE(split.V_plus.size() == lit.V_plus.size());
        for (std::size_t j = 0; j < lit.V_plus.size(); ++j) {
            CAPTURE(j);
            CHECK(close(split.V_plus[j], lit.V_plus[j]));
            CHECK(close(split.W_plus[j], lit.W_plus[j]));
            CHECK(close(split.V_minus[j], lit.V_minus[j]));
            CHECK(close(split.W_minus[j], lit.W_minus[j]));
        }
    }
}

}  // namespace

TEST_CASE("single-step sums match the literal loops")
{
    check_against_literal({poly("t^2+1"), 50, 10, 10, 1});
    check_against_literal({poly("t^2+1"), 200, 60, 6, 2});
    check_against_literal({poly("t^2-2"), 120, 40, 13, 2});
    check_against_literal({factors({"t", "t^2+1"}), 40, 20, 30, 2});
    check_against_literal({factors({"t+1", "t^2+2"}), 45, 15, 7.5L, 2});
    check_against_literal({poly("t"), 300, 150, 20, 2});
    check_against_literal({poly("t^2+1"), 60, 40, 1, 1});
    // Instances with many smooth values, so the heads are nonzero.
    check_against_literal({poly("t^2+1"), 200, 60, 50, 2});
    check_against_literal({poly("t^2+1"), 200, 60, 200, 2});
    check_against_literal({poly("t^2-2"), 120, 40, 60, 2});
    check_against_literal({factors({"t+1", "t^2+2"}), 45, 15, 40, 2});
    check_against_literal({poly("t^2+1"), 400, 100, 100, 2});
}

TEST_CASE("empty left side passes by convention")
{
    VWInstance inst{poly("t^2+1"), 60, 40, 1, 2};
    const auto r = vw_prop21(inst);
    CHECK(r.lhs == 0);
    CHECK(r.lhs_empty);
    CHECK(r.verdict_2_1);
    CHECK(r.verdict_2_2);
}

TEST_CASE("inequality chain algebra")
{
    for (u64 lhs = 1; lhs < 200; lhs += 7)
        for (long double V : {0.0L, 0.5L, 3.0L, 40.0L})
            for (long double W : {0.0L, 1.0L, 9.0L, 300.0L})
                if (inequality_holds(lhs, V, W)) CHECK(consequence_holds(lhs, V, W));
}

TEST_CASE("depth 1 head equals the k <= h part of the single-step sums")
{
    for (const auto& inst : {VWInstance{poly("t^2+1"), 200, 60, 6, 1}, VWInstance{poly("t^2-2"), 500, 100, 50, 1},
                             VWInstance{factors({"t", "t^2+1"}), 300, 120, 20, 1}}) {
        VWContext ctx(inst);
        const auto single = ctx.prop21();
        const auto split = ctx.prop32(1);
        CHECK(close(split.V_plus[0], single.V_within_h));
        CHECK(close(split.W_plus[0], single.W_within_h));
        // Tails dominate the exact remaining parts.
        CHECK(split.V_minus[0] >= single.V - single.V_within_h - 1e-12L);
        CHECK(split.W_minus[0] >= single.W - single.W_within_h - 1e-12L);
        CHECK(split.V >= single.V - 1e-12L);
        CHECK(split.W >= single.W - 1e-12L);
    }
}

TEST_CASE("iterated split and monotone relations")
{
    VWInstance inst{poly("t^2+1"), 400, 100, 100, 3};
    VWContext ctx(inst);
    CHECK(ctx.prop32(1).V_plus[0] > 0);
    for (unsigned m = 1; m <= 3; ++m) {
        const auto r = ctx.prop32(m);
        long double v = r.V_plus.back(), w = r.W_plus.back();
        for (auto t : r.V_minus) v += t;
        for (auto t : r.W_minus) w += t;
        CHECK(close(r.V, v));
        CHECK(close(r.W, w));
        for (auto t : r.V_plus) CHECK(t >= 0);
        for (auto t : r.W_minus) CHECK(t >= 0);
        CHECK(r.verdict_2_1);
        if (m >= 2) {
            REQUIRE(r.monotone_V);
            CHECK(*r.monotone_V);
            CHECK(*r.monotone_W);
        }
    }
    // Depth-m totals increase with m.
    CHECK(ctx.prop32(1).V < ctx.prop32(2).V);
    CHECK(ctx.prop32(2).V < ctx.prop32(3).V);
}

TEST_CASE("hypotheses are enforced")
{
    CHECK_THROWS_AS(VWContext(VWInstance{poly("t^2+1"), 50, 1, 10, 1}), DomainError);
    CHECK_THROWS_AS(VWContext(VWInstance{poly("t^2+1"), 10, 20, 10, 1}), DomainError);
    CHECK_THROWS_AS(VWContext(VWInstance{poly("t^2+1"), 50, 10, 10, 4}), DomainError);
    // f(z) = z for f = t, never above x.
    VWContext ctx(VWInstance{poly("t"), 100, 50, 10, 1});
    CHECK_THROWS_AS(ctx.prop32(1), DomainError);
    CHECK_THROWS_AS(VWContext(VWInstance{poly("t^3"), 99999, 3, 10, 1}), DomainError);
}

TEST_CASE("kappa sums against the literal loops")
{
    VWInstance inst{poly("t^2+1"), 100, 40, 7, 1};
    VWContext ctx(inst);
    const auto r = ctx.lemma31(2);
    // No n in (40, 100] has 7-smooth n^2+1, so this is the vacuous case.
    CHECK(r.lhs == 0);
    CHECK(r.lhs_empty);
    const auto lit = oracle::lemma31_literal(inst, 2);
    CHECK(r.lhs == lit.lhs);
    CHECK(close(r.head, lit.head));
    CHECK(close(r.tail, lit.tail));
    CHECK(r.verdict);
    for (u64 kappa = 1; kappa <= 60; ++kappa) {
        const auto a = ctx.lemma31(kappa);
        const auto b = oracle::lemma31_literal(inst, kappa);
        CHECK(a.lhs == b.lhs);
        CHECK(close(a.rhs, b.rhs));
        CHECK(a.verdict);
    }
    // κ = h: only λ = 1 is in the head, where Λ(1) = 0.
    const auto edge = ctx.lemma31(60);
    CHECK(edge.head == 0);
    CHECK_THROWS_AS(ctx.lemma31(61), DomainError);

    VWInstance dense{poly("t^2+1"), 200, 60, 200, 1};
    VWContext dctx(dense);
    for (u64 kappa = 1; kappa <= 140; kappa += 3) {
        const auto a = dctx.lemma31(kappa);
        const auto b = oracle::lemma31_literal(dense, kappa);
        CHECK(a.lhs == b.lhs);
        CHECK(close(a.head, b.head));
        CHECK(close(a.tail, b.tail));
        CHECK(a.verdict);
    }
}

TEST_CASE("prime-power sums")
{
    auto t = poly("t");
    const auto r = lemma41_sums(t, 10000, 10000);
    const auto lit = oracle::lemma41_literal(t, 10000, 10000);
    CHECK(close(r.sum_all, lit.sum_all));
    CHECK(close(r.sum_upper, lit.sum_upper));
    CHECK(close(r.sum_log, lit.sum_log));
    CHECK(close(r.sum_plain, lit.sum_plain));
    CHECK(std::abs(r.sum_all - r.cmp_all) < 3);

    auto q = poly("t^2+1");
    const auto s = lemma41_sums(q, 10000, 100);
    const auto slit = oracle::lemma41_literal(q, 10000, 100);
    CHECK(close(s.sum_all, slit.sum_all));
    CHECK(close(s.sum_log, slit.sum_log));
    CHECK(std::abs(s.sum_all - s.cmp_all) < 5);

    const auto none = lemma41_sums(q, 10000, 1.5L);
    CHECK(none.sum_all == 0);
    CHECK(none.sum_plain == 0);
}
