#ifndef QFEXP_BOUNDARY_HPP
#define QFEXP_BOUNDARY_HPP

// CM points on the boundary of the fundamental domain and the counting set
// R_Delta that carries the boundary equidistribution law.

#include "qfexp/qform.hpp"

#include <string_view>
#include <vector>

namespace qfexp {

enum class BoundaryLocation { LeftBoundary, LowerArc, Corner, ImaginaryAxis, Interior };

std::string_view to_string(BoundaryLocation loc);

/* Priority Corner > LowerArc/LeftBoundary > ImaginaryAxis, so i = [1,0,1] is LowerArc. */
BoundaryLocation classify_location(Form const & g);

/* [a, a, c] with gcd(a, c) = 1, c >= a and 4ac - a^2 <= delta */
std::vector<Form> enumerate_left_boundary(i64 delta);

/* [a, b, a] with 0 <= b <= a, gcd(a, b) = 1 and 4a^2 - b^2 <= delta */
std::vector<Form> enumerate_lower_arc(i64 delta);

/* Sizes of the two enumerations above without materializing them. */
i64 count_left_boundary(i64 delta);
i64 count_lower_arc(i64 delta);

/*
 * Image of a lower-arc point under z -> -1/(z+1). The result lies on
 * Re z = -1/2 with 1/2 <= Im z <= sqrt(3)/2 and is generally not reduced.
 */
Form arc_transform(Form const & g);

/* Exact rational with positive denominator. */
struct Rational
{
    i64 num;
    i64 den;
};

Rational make_rational(i64 num, i64 den);

double to_double(Rational const & r);

struct IntervalCount
{
    i64 delta;
    Rational x_lo;
    Rational x_hi;
    i64 exact;
    double predicted;

    double relative_error() const;
};

/* Closed-interval count of c/a in [X, Y] over coprime (a, c) with 4ac - a^2 <= delta. */
IntervalCount count_R_interval(i64 delta, Rational X, Rational Y);

/* (3 delta / (2 pi^2)) * (log(4Y - 1) - log(4X - 1)) / 2 */
double predicted_R_count(i64 delta, double X, double Y);

bool verify_lemma_4_1(Discriminant D);

bool all_on_boundary(Discriminant D);

/*
 * Splits [1/2, t_max] into bins of equal mu-measure, d mu = 2 dt / (4t - 1).
 * Bin endpoints are rational approximations with denominator 2^40.
 */
std::vector<IntervalCount> equidistribution_report(i64 delta, int bins, Rational t_max);

} // namespace qfexp

#endif /* QFEXP_BOUNDARY_HPP */
