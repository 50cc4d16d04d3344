#include "doctest.h"

#include <sstream>

#include "smoothpoly/primdiv.hpp"

using namespace smoothpoly;

TEST_CASE("single terms")
{
    CHECK(has_primitive_divisor(1, 2).has_primitive);
    CHECK_FALSE(has_primitive_divisor(1, 3).has_primitive);
    const auto seven = has_primitive_divisor(1, 7);
    CHECK_FALSE(seven.has_primitive);
    CHECK(seven.pplus == 5);
    CHECK(seven.method == PrimDivMethod::criterion);
    const auto one = has_primitive_divisor(1, 1);
    CHECK(one.method == PrimDivMethod::direct);
    CHECK(one.has_primitive);
    CHECK(one.pplus == 2);
    CHECK_THROWS_AS(has_primitive_divisor(-4, 3), DomainError);
    CHECK_THROWS_AS(has_primitive_divisor(0, 3), DomainError);
    CHECK_THROWS_AS(has_primitive_divisor(1, 0), DomainError);
}

TEST_CASE("R_1(10)")
{
    const auto records = primdiv_records(1, 10);
    REQUIRE(records.size() == 10);
    std::vector<i64> have;
    for (const auto& r : records)
        if (r.has_primitive) have.push_back(r.n);
    CHECK(have == std::vector<i64>{1, 2, 4, 5, 6, 9, 10});
    CHECK(r_b(1, 10) == 7);
    const auto def = oracle::primitive_by_definition(1, 10);
    for (i64 n = 1; n <= 10; ++n) CHECK(def[n] == records[n - 1].has_primitive);
    CHECK_THROWS_AS(r_b(-4, 10), DomainError);
    CHECK_THROWS_AS(r_b(-9, 10), DomainError);
}

TEST_CASE("criterion agrees with the definition")
{
    for (i64 b : {1, 2, 3, 5, -2, 7, -3, 11, 30}) {
        const auto records = primdiv_records(b, 2000);
        const auto def = oracle::primitive_by_definition(b, 2000);
        for (const auto& r : records) {
            CAPTURE(b);
            CAPTURE(r.n);
            CHECK(r.has_primitive == def[r.n]);
            CHECK((r.method == PrimDivMethod::criterion) == (r.n > std::abs(b)));
            if (r.method == PrimDivMethod::criterion) CHECK(r.has_primitive == (r.pplus > static_cast<u128>(2 * r.n)));
        }
    }
}

TEST_CASE("records agree with single-term evaluation")
{
    for (i64 b : {1, -2, 30}) {
        const auto records = primdiv_records(b, 300);
        for (const auto& r : records) {
            const auto single = has_primitive_divisor(b, r.n);
            CHECK(single.pplus == r.pplus);
            CHECK(single.has_primitive == r.has_primitive);
            CHECK(single.method == r.method);
        }
    }
}

TEST_CASE("starting the sequence at zero")
{
    for (i64 b : {6, 30, -2, 15}) {
        const auto with_zero = primdiv_records(b, 500, SequenceStart::zero);
        const auto def = oracle::primitive_by_definition(b, 500, SequenceStart::zero);
        for (const auto& r : with_zero) CHECK(r.has_primitive == def[r.n]);
    }
    // A_0 = 6 already contains 2 and 3, so A_2 = 10 has only 5 as a new prime
    // while A_3 = 15 has none.
    CHECK(has_primitive_divisor(6, 2, SequenceStart::zero).has_primitive);
    CHECK(has_primitive_divisor(6, 3, SequenceStart::one).has_primitive);
    CHECK_FALSE(has_primitive_divisor(6, 3, SequenceStart::zero).has_primitive);
}

TEST_CASE("arctangent count")
{
    CHECK(n_arctan(10).count == 7);
    CHECK(n_arctan(3).count == 2);
    CHECK(n_arctan(1).count == 1);
    CHECK(n_arctan(1).n1_by_definition);
    const auto prefix = n_arctan_prefix(3000);
    const auto records = primdiv_records(1, 3000);
    u64 running = 0;
    for (const auto& r : records) {
        running += r.has_primitive;
        CHECK(prefix[r.n] == running);
    }
}

TEST_CASE("R_b against the non-smooth count")
{
    const auto small = verify_prop63(1, 10);
    CHECK(small.r_b == 7);
    CHECK(small.residual <= 3);
    const auto tiny = verify_prop63(30, 20);
    CHECK(tiny.r_b == r_b(30, 20));
    double previous = 1;
    for (i64 x : {10000, 100000}) {
        const auto r = verify_prop63(1, x);
        const double rel = static_cast<double>(r.residual) / x;
        CHECK(rel < previous);
        previous = rel;
    }
}

TEST_CASE("CSV dump")
{
    std::ostringstream out;
    write_csv(out, primdiv_records(1, 3));
    CHECK(out.str() == "b,n,pplus,has_primitive,method\n1,1,2,1,direct\n1,2,5,1,criterion\n1,3,5,0,criterion\n");
}
