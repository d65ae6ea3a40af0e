#include "qfexp/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfexp {

namespace {

constexpr double pi2 = std::numbers::pi * std::numbers::pi;

/* Neumaier compensated accumulator */
struct Accumulator
{
    long double sum = 0;
    long double comp = 0;

    void add(long double x)
    {
        long double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    long double value() const { return sum + comp; }
};

} // namespace

double AsymptoticCheck::abs_error() const
{
    return double(std::fabs(exact - (long double) estimate));
}

double AsymptoticCheck::relative_error() const
{
    return abs_error() / std::fabs(estimate);
}

std::vector<i64> totient_sieve(i64 n)
{
    std::vector<i64> phi(std::size_t(n) + 1, 0);
    std::vector<i64> primes;
    if (n >= 1)
        phi[1] = 1;
    for (i64 i = 2; i <= n; ++i) {
        if (phi[i] == 0) {
            phi[i] = i - 1;
            primes.push_back(i);
        }
        for (i64 p : primes) {
            i64 m = i * p;
            if (m > n)
                break;
            if (i % p == 0) {
                phi[m] = phi[i] * p;
                break;
            }
            phi[m] = phi[i] * (p - 1);
        }
    }
    return phi;
}

std::vector<int> mobius_sieve(i64 n)
{
    std::vector<int> mu(std::size_t(n) + 1, 0);
    std::vector<char> composite(std::size_t(n) + 1, 0);
    std::vector<i64> primes;
    if (n >= 1)
        mu[1] = 1;
    for (i64 i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (i64 p : primes) {
            i64 m = i * p;
            if (m > n)
                break;
            composite[m] = 1;
            if (i % p == 0) {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    return mu;
}

i64 euler_phi(i64 n)
{
    i64 r = n;
    for (auto [p, k] : factor(u64(n)))
        r = r / i64(p) * (i64(p) - 1);
    return r;
}

CountEstimate coprime_count(i64 T, i64 a)
{
    if (T < 1 || a < 1)
        throw std::invalid_argument("coprime_count: need T >= 1 and a >= 1");
    i64 exact = 0;
    for (i64 c = 1; c <= T; ++c)
        if (gcd(c, a) == 1)
            ++exact;
    return {exact, double(euler_phi(a)) * double(T) / double(a)};
}

CountEstimate totient_sum(i64 T)
{
    if (T < 1)
        throw std::invalid_argument("totient_sum: need T >= 1");
    auto phi = totient_sieve(T);
    i64 s = 0;
    for (i64 i = 1; i <= T; ++i)
        s += phi[i];
    return {s, 3.0 * double(T) * double(T) / pi2};
}

Gamma0 gamma0(i64 terms)
{
    if (terms < 1000)
        throw std::invalid_argument("gamma0: need at least 10^3 terms");
    auto mu = mobius_sieve(terms);
    Accumulator acc;
    for (i64 d = 1; d <= terms; ++d) {
        if (mu[d] == 0)
            continue;
        long double dd = d;
        acc.add(mu[d] * (euler_gamma - std::log(dd)) / (dd * dd));
    }
    /* (gamma + log x)/x^2 decreases for x >= 1, so the tail is below its integral */
    double N = double(terms);
    double tail = (double(euler_gamma) + std::log(N) + 1.0) / N;
    return Gamma0{acc.value(), tail, terms};
}

SumEstimate totient_over_square_sum(i64 T, i64 gamma0_terms)
{
    if (T < 1)
        throw std::invalid_argument("totient_over_square_sum: need T >= 1");
    auto phi = totient_sieve(T);
    Accumulator acc;
    for (i64 a = 1; a <= T; ++a) {
        long double aa = a;
        acc.add((long double) phi[a] / (aa * aa));
    }
    long double g0 = gamma0(gamma0_terms).value;
    double est = double(6.0L / pi2 * std::log((long double) T) + g0);
    return {acc.value(), est};
}

AsymptoticCheck check_coprime_count(i64 T, i64 a, double C)
{
    auto r = coprime_count(T, a);
    return {T, (long double) r.exact, r.estimate, C * std::pow(double(a), 0.25)};
}

AsymptoticCheck check_totient_sum(i64 T, double C)
{
    auto r = totient_sum(T);
    return {T, (long double) r.exact, r.estimate, C * double(T) * std::log(double(T))};
}

AsymptoticCheck check_totient_over_square_sum(i64 T, double C)
{
    auto r = totient_over_square_sum(T);
    return {T, r.exact, r.estimate, C * std::log(double(T)) / double(T)};
}

} // namespace qfexp
