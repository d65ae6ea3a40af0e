#ifndef QFEXP_ANALYTIC_HPP
#define QFEXP_ANALYTIC_HPP

// Exact summatory functions next to their main-term estimates:
//   #{c <= T : (c, a) = 1}           ~ phi(a) T / a
//   sum_{a <= T} phi(a)              ~ 3 T^2 / pi^2
//   sum_{a <= T} phi(a) / a^2        ~ (6 / pi^2) log T + gamma0

#include "qfexp/arith.hpp"

#include <vector>

namespace qfexp {

/* Euler-Mascheroni constant, 20 significant digits */
inline constexpr long double euler_gamma = 0.57721566490153286061L;

struct CountEstimate
{
    i64 exact;
    double estimate;
};

struct SumEstimate
{
    long double exact;
    double estimate;
};

struct Gamma0
{
    long double value;
    /* bound on the omitted tail sum_{d > N} (gamma + log d) / d^2 */
    double tail_bound;
    i64 terms;
};

/* An exact/estimate pair with its error envelope C * scale(T). */
struct AsymptoticCheck
{
    i64 T;
    long double exact;
    double estimate;
    double error_bound;

    double abs_error() const;
    double relative_error() const;
    bool within() const { return abs_error() <= error_bound; }
};

std::vector<i64> totient_sieve(i64 n);
std::vector<int> mobius_sieve(i64 n);

i64 euler_phi(i64 n);

CountEstimate coprime_count(i64 T, i64 a);

CountEstimate totient_sum(i64 T);

inline constexpr i64 default_gamma0_terms = 10'000'000;

SumEstimate totient_over_square_sum(i64 T, i64 gamma0_terms = default_gamma0_terms);

Gamma0 gamma0(i64 terms);

/* envelopes C a^{1/4}, C T log T, C log T / T */
AsymptoticCheck check_coprime_count(i64 T, i64 a, double C);
AsymptoticCheck check_totient_sum(i64 T, double C);
AsymptoticCheck check_totient_over_square_sum(i64 T, double C);

} // namespace qfexp

#endif /* QFEXP_ANALYTIC_HPP */
