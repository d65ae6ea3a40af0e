#ifndef QFEXP_CONDUCTOR_HPP
#define QFEXP_CONDUCTOR_HPP

// Divisibility constraints on conductors f of discriminants D = d0 f^2.
//
// For p^k || f put L(p^k) = p^(k-1) (p - (d0/p)) and L(f) = lcm over p^k || f.
// If Cl(d0 f^2) has exponent E then L(f) divides 12 |O_d0^x| E, and every f
// divides theta(L(f)), theta(m) being the product of all p^k with L(p^k) | m.

#include "qfexp/qform.hpp"

#include <vector>

namespace qfexp {

/* Conductors can exceed 64 bits before any class group is looked at. */
using Conductor = u128;

struct ConductorCandidate
{
    Discriminant d0;
    Conductor f;
    u128 L_value;
    i64 bound;
};

/* |O_d0^x|; throws std::domain_error if d0 is not fundamental. */
int unit_count(Discriminant d0);

u128 L_prime_power(Discriminant d0, u64 p, unsigned k);

u128 L_of(Discriminant d0, u64 f);

/* 12 * unit_count(d0) * E */
i64 lemma_5_1_bound(Discriminant d0, i64 E);

bool check_lemma_5_1(Discriminant D);

/* Prime-power factorization of theta(m): for each prime the largest k with L(p^k) | m. */
std::vector<PrimePower> theta_factors(Discriminant d0, u64 m);

Conductor theta(Discriminant d0, u64 m);

/* All f with L(f) | lemma_5_1_bound(d0, E), ascending. */
std::vector<Conductor> candidate_conductors(Discriminant d0, i64 E);

std::vector<ConductorCandidate> candidate_details(Discriminant d0, i64 E);

/* h(d0 f^2) from h(d0) via the class number formula for orders. */
i64 order_class_number(Discriminant d0, i64 f);

} // namespace qfexp

#endif /* QFEXP_CONDUCTOR_HPP */
