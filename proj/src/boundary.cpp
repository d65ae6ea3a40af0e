#include "qfexp/boundary.hpp"

#include "qfexp/classgroup.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qfexp {

std::string_view to_string(BoundaryLocation loc)
{
    switch (loc) {
    case BoundaryLocation::LeftBoundary:
        return "LeftBoundary";
    case BoundaryLocation::LowerArc:
        return "LowerArc";
    case BoundaryLocation::Corner:
        return "Corner";
    case BoundaryLocation::ImaginaryAxis:
        return "ImaginaryAxis";
    case BoundaryLocation::Interior:
        return "Interior";
    }
    return "?";
}

BoundaryLocation classify_location(Form const & g)
{
    if (!is_reduced(g))
        throw std::invalid_argument("classify_location: form is not reduced");
    if (g.a == g.b && g.a == g.c)
        return BoundaryLocation::Corner;
    if (g.a == g.c)
        return BoundaryLocation::LowerArc;
    if (g.a == g.b)
        return BoundaryLocation::LeftBoundary;
    if (g.b == 0)
        return BoundaryLocation::ImaginaryAxis;
    return BoundaryLocation::Interior;
}

std::vector<Form> enumerate_left_boundary(i64 delta)
{
    if (delta < 3)
        throw std::invalid_argument("enumerate_left_boundary: delta must be >= 3");
    std::vector<Form> out;
    /* c >= a gives 3a^2 <= 4ac - a^2 <= delta */
    for (i64 a = 1; 3 * i128(a) * a <= delta; ++a) {
        i64 c_max = i64((i128(delta) + i128(a) * a) / (4 * i128(a)));
        for (i64 c = a; c <= c_max; ++c)
            if (gcd(a, c) == 1)
                out.push_back(Form{a, a, c});
    }
    return out;
}

std::vector<Form> enumerate_lower_arc(i64 delta)
{
    if (delta < 3)
        throw std::invalid_argument("enumerate_lower_arc: delta must be >= 3");
    std::vector<Form> out;
    /* b <= a gives 3a^2 <= 4a^2 - b^2 <= delta */
    for (i64 a = 1; 3 * i128(a) * a <= delta; ++a) {
        for (i64 b = 0; b <= a; ++b) {
            if (4 * i128(a) * a - i128(b) * b > delta || gcd(a, b) != 1)
                continue;
            out.push_back(Form{a, b, a});
        }
    }
    return out;
}

Form arc_transform(Form const & g)
{
    if (g.a != g.c || g.b < 0 || g.b > g.a)
        throw std::invalid_argument("arc_transform: form is not on the lower arc");
    /* [a,b,c] composed with (x, y) -> (x + y, -x) */
    return Form{g.a - g.b + g.c, 2 * g.a - g.b, g.a};
}

Rational make_rational(i64 num, i64 den)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i64 g = gcd(num, den);
    return Rational{num / g, den / g};
}

double to_double(Rational const & r)
{
    return double(r.num) / double(r.den);
}

double IntervalCount::relative_error() const
{
    return (double(exact) - predicted) / predicted;
}

double predicted_R_count(i64 delta, double X, double Y)
{
    double const scale = 3.0 * double(delta) / (2.0 * std::numbers::pi * std::numbers::pi);
    return scale * 0.5 * (std::log(4.0 * Y - 1.0) - std::log(4.0 * X - 1.0));
}

namespace {

bool less(Rational const & x, Rational const & y)
{
    return i128(x.num) * y.den < i128(y.num) * x.den;
}

/* #{c in [lo, hi] : gcd(c, a) = 1} by inclusion-exclusion over the primes of a */
i64 coprime_in_range(i64 lo, i64 hi, std::vector<u64> const & primes)
{
    if (hi < lo)
        return 0;
    i64 total = 0;
    std::size_t const n = primes.size();
    for (u64 mask = 0; mask < (u64(1) << n); ++mask) {
        i64 d = 1;
        int sign = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (u64(1) << i)) {
                d *= i64(primes[i]);
                sign = -sign;
            }
        }
        i64 cnt = i64(floor_div(hi, d) - floor_div(lo - 1, d));
        total += sign * cnt;
    }
    return total;
}

} // namespace

IntervalCount count_R_interval(i64 delta, Rational X, Rational Y)
{
    Rational const half{1, 2};
    if (X.den <= 0 || Y.den <= 0 || less(X, half) || !less(X, Y))
        throw std::invalid_argument("count_R_interval: need 1/2 <= X < Y");

    /* c >= aX together with a(4c - a) <= delta forces a^2 (4X - 1) <= delta */
    i128 const k = 4 * i128(X.num) - X.den;
    i64 a_max = 1;
    while (i128(a_max + 1) * (a_max + 1) * k <= i128(delta) * X.den)
        ++a_max;

    std::vector<u64> spf(u64(a_max) + 1, 0);
    for (u64 i = 2; i <= u64(a_max); ++i)
        if (spf[i] == 0)
            for (u64 j = i; j <= u64(a_max); j += i)
                if (spf[j] == 0)
                    spf[j] = i;

    i64 exact = 0;
    std::vector<u64> primes;
    for (i64 a = 1; a <= a_max; ++a) {
        i64 lo = i64(ceil_div(i128(a) * X.num, X.den));
        i64 hi_y = i64(floor_div(i128(a) * Y.num, Y.den));
        i64 hi_d = i64((i128(delta) + i128(a) * a) / (4 * i128(a)));
        i64 hi = std::min(hi_y, hi_d);
        if (hi < lo)
            continue;
        primes.clear();
        for (u64 m = u64(a); m > 1;) {
            u64 p = spf[m];
            primes.push_back(p);
            while (m % p == 0)
                m /= p;
        }
        exact += coprime_in_range(lo, hi, primes);
    }
    return IntervalCount{delta, X, Y, exact, predicted_R_count(delta, to_double(X), to_double(Y))};
}

namespace {

std::vector<u64> smallest_prime_factors(u64 n)
{
    std::vector<u64> spf(n + 1, 0);
    for (u64 i = 2; i <= n; ++i)
        if (spf[i] == 0)
            for (u64 j = i; j <= n; j += i)
                if (spf[j] == 0)
                    spf[j] = i;
    return spf;
}

void distinct_primes(u64 m, std::vector<u64> const & spf, std::vector<u64> & out)
{
    out.clear();
    while (m > 1) {
        u64 p = spf[m];
        out.push_back(p);
        while (m % p == 0)
            m /= p;
    }
}

} // namespace

i64 count_left_boundary(i64 delta)
{
    if (delta < 3)
        throw std::invalid_argument("count_left_boundary: delta must be >= 3");
    i64 a_max = i64(isqrt(u64(delta / 3)));
    auto spf = smallest_prime_factors(u64(a_max));
    std::vector<u64> primes;
    i64 n = 0;
    for (i64 a = 1; a <= a_max; ++a) {
        i64 c_max = i64((i128(delta) + i128(a) * a) / (4 * i128(a)));
        distinct_primes(u64(a), spf, primes);
        n += coprime_in_range(a, c_max, primes);
    }
    return n;
}

i64 count_lower_arc(i64 delta)
{
    if (delta < 3)
        throw std::invalid_argument("count_lower_arc: delta must be >= 3");
    i64 a_max = i64(isqrt(u64(delta / 3)));
    auto spf = smallest_prime_factors(u64(a_max));
    std::vector<u64> primes;
    i64 n = 0;
    for (i64 a = 1; a <= a_max; ++a) {
        /* smallest b >= 0 with 4a^2 - b^2 <= delta */
        i128 need = 4 * i128(a) * a - delta;
        i64 b_min = 0;
        if (need > 0) {
            b_min = i64(isqrt(u64(need)));
            if (i128(b_min) * b_min < need)
                ++b_min;
        }
        distinct_primes(u64(a), spf, primes);
        n += coprime_in_range(b_min, a, primes);
    }
    return n;
}

bool verify_lemma_4_1(Discriminant D)
{
    Form const e = identity(D);
    bool ok = true;
    bool axis_occupied = false;
    for_each_reduced(D, [&](Form const & g) {
        bool on_boundary = classify_location(g) != BoundaryLocation::Interior;
        bool order_le_2 = square(g) == e;
        if (g.b == 0)
            axis_occupied = true;
        if (on_boundary != order_le_2) {
            ok = false;
            return false;
        }
        return true;
    });
    if (axis_occupied && D.is_odd())
        ok = false;
    return ok;
}

bool all_on_boundary(Discriminant D)
{
    return for_each_reduced(D, [](Form const & g) {
        auto loc = classify_location(g);
        return loc == BoundaryLocation::LeftBoundary || loc == BoundaryLocation::LowerArc
               || loc == BoundaryLocation::Corner;
    });
}

std::vector<IntervalCount> equidistribution_report(i64 delta, int bins, Rational t_max)
{
    if (delta < 3 || bins < 1 || t_max.den <= 0 || !less(Rational{1, 2}, t_max))
        throw std::invalid_argument("equidistribution_report: need delta >= 3, bins >= 1, t_max > 1/2");
    constexpr i64 den = i64(1) << 40;
    double const span = 4.0 * to_double(t_max) - 1.0;
    std::vector<Rational> edges;
    edges.push_back(Rational{1, 2});
    for (int i = 1; i < bins; ++i) {
        double t = (1.0 + std::pow(span, double(i) / bins)) / 4.0;
        edges.push_back(make_rational(std::llround(t * double(den)), den));
    }
    edges.push_back(t_max);

    std::vector<IntervalCount> out;
    for (int i = 0; i < bins; ++i)
        out.push_back(count_R_interval(delta, edges[i], edges[i + 1]));
    return out;
}

} // namespace qfexp
