#include <doctest.h>

#include <random>

#include "mrf/rational.hpp"

using namespace mrf;

TEST_CASE("rational parsing accepts p/q, integers, and decimals") {
    CHECK(*parse_rational("1/20") == Rat(1, 20));
    CHECK(*parse_rational("3") == Rat(3));
    CHECK(*parse_rational("-2/5") == Rat(-2, 5));
    CHECK(*parse_rational("+7/3") == Rat(7, 3));
    CHECK(*parse_rational("0.05") == Rat(1, 20));
    CHECK(*parse_rational("-0.25") == Rat(-1, 4));
    CHECK(*parse_rational("2.") == Rat(2));
    CHECK(*parse_rational(".5") == Rat(1, 2));
    CHECK(*parse_rational("0") == Rat(0));
}

TEST_CASE("rational parsing rejects junk") {
    CHECK(!parse_rational(""));
    CHECK(!parse_rational("a/b"));
    CHECK(!parse_rational("1/0"));
    CHECK(!parse_rational("1/2/3"));
    CHECK(!parse_rational("1e-3"));
    CHECK(!parse_rational("--1"));
    CHECK(!parse_rational("."));
}

TEST_CASE("doubles convert to exact dyadic rationals and back") {
    for (double x : {0.5, -0.375, 1.0, 0.1, 3.141592653589793, 1e-12}) {
        Rat r = rat_from_double(x);
        CHECK(rat_to_double(r) == x);
    }
    CHECK(rat_from_double(0.25) == Rat(1, 4));
    CHECK(rat_from_double(0.0) == Rat(0));
}

TEST_CASE("rational string rendering") {
    CHECK(rat_to_string(Rat(1, 20)) == "1/20");
    CHECK(rat_to_string(Rat(4)) == "4");
    CHECK(rat_to_string(Rat(-3, 7)) == "-3/7");
    CHECK(rat_to_string(Rat(0)) == "0");
}

TEST_CASE("format_real is stable at 12 significant digits") {
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(2.0 / 3.0) == "0.666666666667");
    CHECK(format_real(1e-9) == "1e-09");
}

TEST_CASE("arithmetic agrees with 128-bit integer cross-multiplication") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 500; ++trial) {
        auto draw = [&]() { return static_cast<long long>(rng() % 2001) - 1000; };
        long long a = draw(), c = draw();
        // constructor denominators must be positive
        long long b = 1 + static_cast<long long>(rng() % 1000);
        long long d = 1 + static_cast<long long>(rng() % 1000);
        Rat lhs = Rat(a, b) + Rat(c, d);
        __int128 num = static_cast<__int128>(a) * d + static_cast<__int128>(c) * b;
        __int128 den = static_cast<__int128>(b) * d;
        __int128 ln = static_cast<__int128>(numerator(lhs).convert_to<long long>());
        __int128 ld = static_cast<__int128>(denominator(lhs).convert_to<long long>());
        CHECK(ln * den == num * ld);
    }
}
