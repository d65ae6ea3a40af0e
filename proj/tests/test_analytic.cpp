#include "qfexp/analytic.hpp"

#include "oracles.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cmath>
#include <fstream>

using namespace qfexp;

namespace {

struct Envelopes
{
    double coprime;
    double totient;
    double over_square;
};

Envelopes load_envelopes()
{
    std::ifstream in(QFEXP_TEST_CONFIG_DIR "/envelopes.json");
    REQUIRE(in.good());
    auto j = nlohmann::json::parse(in);
    return {j.at("coprime_count").get<double>(), j.at("totient_sum").get<double>(),
            j.at("totient_over_square_sum").get<double>()};
}

} // namespace

TEST_SUITE("analytic") {

TEST_CASE("sieves")
{
    auto phi = totient_sieve(20);
    std::vector<i64> want{0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4, 12, 6, 8, 8, 16, 6, 18, 8};
    CHECK(phi == want);
    auto mu = mobius_sieve(5000);
    for (i64 n = 1; n <= 5000; ++n)
        CHECK(mu[n] == oracle::mobius_naive(n));
    auto phi_big = totient_sieve(5000);
    for (i64 n = 1; n <= 5000; ++n)
        CHECK(phi_big[n] == euler_phi(n));
}

TEST_CASE("coprime_count examples")
{
    auto r = coprime_count(10, 1);
    CHECK(r.exact == 10);
    CHECK(r.estimate == doctest::Approx(10.0));
    r = coprime_count(10, 6);
    CHECK(r.exact == 3);
    CHECK(r.estimate == doctest::Approx(10.0 / 3));
    CHECK_THROWS_AS(coprime_count(0, 5), std::invalid_argument);
}

TEST_CASE("coprime_count against inclusion-exclusion")
{
    for (i64 a = 1; a <= 1000; a += 7)
        for (i64 T : {1, 17, 360, 10000})
            CHECK(coprime_count(T, a).exact == oracle::coprime_count_incl_excl(T, a));
}

TEST_CASE("totient_sum examples and the mobius identity")
{
    CHECK(totient_sum(5).exact == 10);
    CHECK(totient_sum(1).exact == 1);
    for (i64 T = 1; T <= 10000; T += (T < 200 ? 1 : 97))
        CHECK_MESSAGE(totient_sum(T).exact == oracle::totient_sum_via_mobius(T), "T = " << T);
    CHECK(totient_sum(10000).exact == oracle::totient_sum_via_mobius(10000));
}

TEST_CASE("totient_over_square_sum examples")
{
    CHECK(double(totient_over_square_sum(2, 1000).exact) == doctest::Approx(1.25).epsilon(1e-15));
    double want = 1 + 1.0 / 4 + 2.0 / 9 + 2.0 / 16 + 4.0 / 25;
    CHECK(double(totient_over_square_sum(5, 1000).exact) == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("gamma0 converges")
{
    auto g3 = gamma0(1000);
    auto g4 = gamma0(10000);
    auto g6 = gamma0(1000000);
    /* 10^3 terms is off by about 3e-5, 10^4 terms already agrees to 5 places */
    CHECK(std::fabs(double(g3.value - g6.value)) < 1e-4);
    CHECK(std::fabs(double(g4.value - g6.value)) < 5e-6);
    CHECK(std::fabs(double(g3.value - g6.value)) <= g3.tail_bound + g6.tail_bound);
    CHECK(g6.tail_bound < g3.tail_bound);
    CHECK(g6.terms == 1000000);
    CHECK_THROWS_AS(gamma0(999), std::invalid_argument);

    auto r5 = totient_over_square_sum(100000);
    auto r6 = totient_over_square_sum(1000000);
    CHECK(std::fabs(double(r6.exact) - r6.estimate) < std::fabs(double(r5.exact) - r5.estimate));
}

TEST_CASE("absolute mobius does not reproduce gamma0")
{
    /* negative control: the same series with |mu| misses the target */
    auto mu = mobius_sieve(100000);
    long double wrong = 0;
    for (i64 d = 1; d <= 100000; ++d) {
        long double dd = d;
        wrong += std::abs(mu[d]) * (euler_gamma - std::log(dd)) / (dd * dd);
    }
    auto g = gamma0(100000);
    CHECK(std::fabs(double(wrong - g.value)) > 0.1);

    auto r = totient_over_square_sum(100000);
    double bad_estimate = double(6.0L / (M_PI * M_PI) * std::log(100000.0L) + wrong);
    CHECK(std::fabs(double(r.exact) - bad_estimate) > 100 * std::fabs(double(r.exact) - r.estimate));
}

TEST_CASE("error envelopes hold with the calibrated constants")
{
    Envelopes C = load_envelopes();
    double prev1 = INFINITY, prev2 = INFINITY, prev3 = INFINITY;
    for (i64 T : {1000, 10000, 100000, 1000000}) {
        for (i64 a : {1, 2, 6, 30, 210, 997, 1000}) {
            auto c = check_coprime_count(T, a, C.coprime);
            CHECK_MESSAGE(c.within(), "coprime T = " << T << " a = " << a);
        }
        auto c1 = check_coprime_count(T, 30, C.coprime);
        auto c2 = check_totient_sum(T, C.totient);
        auto c3 = check_totient_over_square_sum(T, C.over_square);
        CHECK(c2.within());
        CHECK(c3.within());
        CHECK(c1.relative_error() <= prev1);
        CHECK(c2.relative_error() <= prev2);
        CHECK(c3.relative_error() <= prev3);
        prev1 = c1.relative_error();
        prev2 = c2.relative_error();
        prev3 = c3.relative_error();
    }
}

}
