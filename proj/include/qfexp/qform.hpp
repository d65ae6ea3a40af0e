#ifndef QFEXP_QFORM_HPP
#define QFEXP_QFORM_HPP

// Positive-definite integral binary quadratic forms [a, b, c] = ax^2 + bxy + cy^2.
//
// A form is identified with its CM point, the root of a z^2 + b z + c in the
// upper half plane. Reduced forms are exactly those whose CM point lies in the
// half-open fundamental domain of SL2(Z): left boundary and left half of the
// unit arc included, right side excluded.

#include "qfexp/arith.hpp"

#include <compare>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace qfexp {

/* Negative integer congruent to 0 or 1 mod 4. */
class Discriminant
{
    i64 value_;

  public:
    explicit Discriminant(i64 value);

    i64 value() const { return value_; }
    u64 abs() const { return u64(-value_); }
    bool is_odd() const { return (value_ & 1) != 0; }

    /* true iff this is the discriminant of an imaginary quadratic field */
    bool is_fundamental() const;

    friend auto operator<=>(Discriminant const &, Discriminant const &) = default;
};

bool is_valid_discriminant(i64 value);

struct FactoredDiscriminant
{
    Discriminant d0;
    i64 f;
};

struct Form
{
    i64 a;
    i64 b;
    i64 c;

    friend auto operator<=>(Form const &, Form const &) = default;
};

/* Builds a form after checking a >= 1, gcd(a,b,c) = 1 and b^2 - 4ac < 0. */
Form make_form(i64 a, i64 b, i64 c);

/* Form with the given a, b and the discriminant D; throws if 4a does not divide b^2 - D. */
Form form_from_ab(i64 a, i64 b, Discriminant D);

std::ostream & operator<<(std::ostream & os, Form const & g);

Discriminant discriminant(Form const & g);

bool is_reduced(Form const & g);

Form reduce(Form const & g);

bool is_primitive(i64 a, i64 b, i64 c);

/*
 * Calls visit(g) for every reduced primitive form of discriminant D, in
 * ascending (a, b) order. Stops as soon as visit returns false; the return
 * value is false iff the walk was stopped early.
 */
bool for_each_reduced(Discriminant D, std::function<bool(Form const &)> const & visit);

std::vector<Form> enumerate_reduced(Discriminant D);

i64 class_number(Discriminant D);

/* Kronecker symbol (n / p) for a prime p. Throws std::domain_error otherwise. */
int kronecker(i64 n, u64 p);

FactoredDiscriminant factor_discriminant(Discriminant D);

struct Point
{
    double x;
    double y;
};

Point cm_point(Form const & g);

} // namespace qfexp

#endif /* QFEXP_QFORM_HPP */
