#include "qfexp/qform.hpp"

#include "oracles.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace qfexp;

TEST_SUITE("qform") {

TEST_CASE("discriminant of small forms")
{
    CHECK(discriminant(make_form(1, 1, 1)).value() == -3);
    CHECK(discriminant(make_form(1, 0, 41)).value() == -164);
    CHECK(discriminant(make_form(2, 1, 3)).value() == -23);
}

TEST_CASE("form and discriminant validation")
{
    CHECK_THROWS_AS(make_form(0, 1, 1), std::domain_error);
    CHECK_THROWS_AS(make_form(2, 2, 2), std::domain_error);   /* not primitive */
    CHECK_THROWS_AS(make_form(1, 3, 1), std::domain_error);   /* indefinite */
    CHECK_THROWS_AS(Discriminant(-1), std::domain_error);
    CHECK_THROWS_AS(Discriminant(-2), std::domain_error);
    CHECK_THROWS_AS(Discriminant(5), std::domain_error);
    CHECK_THROWS_AS(Discriminant(0), std::domain_error);
    CHECK_NOTHROW(Discriminant(-4));
    CHECK(form_from_ab(2, 1, Discriminant(-23)) == Form{2, 1, 3});
    CHECK_THROWS(form_from_ab(2, 0, Discriminant(-23)));
}

TEST_CASE("is_reduced matches the domain test on CM points")
{
    CHECK(is_reduced(Form{1, 1, 1}));
    CHECK(is_reduced(Form{2, -1, 3}));
    CHECK(oracle::point_in_domain(Form{2, -1, 3}));
    CHECK_FALSE(is_reduced(Form{3, 10, 9}));
    CHECK_FALSE(is_reduced(Form{2, -2, 3}));  /* right boundary */
    CHECK_FALSE(is_reduced(Form{2, -1, 2}));  /* right half of the arc */
    CHECK(is_reduced(Form{2, 1, 2}));

    for (i64 a = 1; a <= 12; ++a)
        for (i64 b = -15; b <= 15; ++b)
            for (i64 c = 1; c <= 15; ++c) {
                if (b * b - 4 * a * c >= 0)
                    continue;
                Form g{a, b, c};
                CHECK(is_reduced(g) == oracle::point_in_domain(g));
            }
}

TEST_CASE("reduce agrees with the SL2 orbit search")
{
    Form r = reduce(make_form(3, 10, 9));
    CHECK(r == Form{1, 0, 2});
    auto orbit = oracle::reduced_in_orbit(Form{3, 10, 9}, 10);
    REQUIRE(orbit.size() == 1);
    CHECK(*orbit.begin() == r);

    CHECK(reduce(make_form(1, 0, 5)) == Form{1, 0, 5});
    CHECK(reduce(make_form(2, -2, 3)) == Form{2, 2, 3});
    auto orbit20 = oracle::reduced_in_orbit(Form{2, -2, 3}, 4);
    REQUIRE(orbit20.size() == 1);
    CHECK(*orbit20.begin() == Form{2, 2, 3});

    CHECK(reduce(make_form(2, -1, 2)) == Form{2, 1, 2});
}

TEST_CASE("reduce is idempotent and preserves the discriminant")
{
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<i64> coeff(-300, 300);
    int checked = 0;
    while (checked < 5000) {
        i64 a = std::abs(coeff(rng)) + 1, b = coeff(rng), c = std::abs(coeff(rng)) + 1;
        i64 d = b * b - 4 * a * c;
        if (d >= 0 || d < -100000 || !is_primitive(a, b, c))
            continue;
        Form g{a, b, c};
        Form r = reduce(g);
        CHECK(is_reduced(r));
        CHECK(discriminant(r).value() == d);
        CHECK(reduce(r) == r);
        ++checked;
    }
}

TEST_CASE("reduce is invariant under random SL2 words")
{
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> pick(0, 3);
    auto const forms = enumerate_reduced(Discriminant(-4027));
    for (Form const & g : forms) {
        Form h = g;
        for (int step = 0; step < 12; ++step) {
            switch (pick(rng)) {
            case 0: h = oracle::act(h, 1, 1, 0, 1); break;
            case 1: h = oracle::act(h, 1, -1, 0, 1); break;
            case 2: h = oracle::act(h, 0, -1, 1, 0); break;
            default: h = oracle::act(h, 1, 0, 1, 1); break;
            }
        }
        CHECK(reduce(h) == g);
    }
}

TEST_CASE("enumerate_reduced")
{
    CHECK(enumerate_reduced(Discriminant(-3)) == std::vector<Form>{{1, 1, 1}});
    CHECK(enumerate_reduced(Discriminant(-20)) == std::vector<Form>{{1, 0, 5}, {2, 2, 3}});
    CHECK(enumerate_reduced(Discriminant(-23)) == std::vector<Form>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});

    for (i64 n = 3; n <= 3000; ++n) {
        if (!is_valid_discriminant(-n))
            continue;
        auto got = enumerate_reduced(Discriminant(-n));
        auto want = oracle::reduced_forms_brute(-n);
        CHECK_MESSAGE(got == want, "D = -" << n);
    }
}

TEST_CASE("class numbers")
{
    CHECK(class_number(Discriminant(-163)) == 1);
    CHECK(class_number(Discriminant(-5460)) == 16);
    CHECK(class_number(Discriminant(-4027)) == 9);
    for (i64 d : {-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163})
        CHECK(class_number(Discriminant(d)) == 1);
}

TEST_CASE("kronecker symbol")
{
    CHECK(kronecker(-7, 2) == 1);
    CHECK(kronecker(-3, 3) == 0);
    CHECK(kronecker(-3, 5) == -1);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-4, 2) == 0);
    CHECK_THROWS_AS(kronecker(5, 9), std::domain_error);
    CHECK_THROWS_AS(kronecker(5, 1), std::domain_error);
    for (i64 p : {2, 3, 5, 7, 11, 13, 101, 997})
        for (i64 n = -300; n <= 300; ++n)
            CHECK(kronecker(n, u64(p)) == oracle::kronecker_by_squares(n, p));
}

TEST_CASE("factor_discriminant")
{
    auto fd = factor_discriminant(Discriminant(-12));
    CHECK(fd.d0.value() == -3);
    CHECK(fd.f == 2);
    fd = factor_discriminant(Discriminant(-7));
    CHECK(fd.d0.value() == -7);
    CHECK(fd.f == 1);
    fd = factor_discriminant(Discriminant(-1155));
    CHECK(fd.d0.value() == -1155);
    CHECK(fd.f == 1);
    fd = factor_discriminant(Discriminant(-7392));
    CHECK(fd.d0.value() == -1848);
    CHECK(fd.f == 2);

    for (i64 n = 3; n <= 20000; ++n) {
        if (!is_valid_discriminant(-n))
            continue;
        auto [d0, f] = factor_discriminant(Discriminant(-n));
        CHECK(d0.value() * f * f == -n);
        CHECK(d0.is_fundamental());
    }
}

TEST_CASE("fundamental discriminants")
{
    for (i64 d : {-3, -4, -7, -8, -15, -20, -24, -163, -5460})
        CHECK(Discriminant(d).is_fundamental());
    for (i64 d : {-12, -16, -27, -28, -32, -36, -48, -7392})
        CHECK_FALSE(Discriminant(d).is_fundamental());
}

TEST_CASE("cm_point")
{
    auto p = cm_point(Form{1, 1, 1});
    CHECK(p.x == doctest::Approx(-0.5));
    CHECK(p.y == doctest::Approx(std::sqrt(3.0) / 2));
    p = cm_point(Form{1, 0, 1});
    CHECK(p.x == doctest::Approx(0.0));
    CHECK(p.y == doctest::Approx(1.0));
    p = cm_point(Form{1, 1, 41});
    CHECK(p.x == doctest::Approx(-0.5));
    CHECK(p.y == doctest::Approx(std::sqrt(163.0) / 2));
}

TEST_CASE("reduced CM points lie in the half-open domain")
{
    for (i64 n = 3; n <= 4000; ++n) {
        if (!is_valid_discriminant(-n))
            continue;
        for (Form const & g : enumerate_reduced(Discriminant(-n))) {
            auto p = cm_point(g);
            double r2 = p.x * p.x + p.y * p.y;
            CHECK(std::fabs(p.x) <= 0.5);
            CHECK(r2 >= 1.0 - 1e-12);
            CHECK(p.x < 0.5);
            if (g.a == g.c)
                CHECK(p.x <= 0.0);
        }
    }
}

}
