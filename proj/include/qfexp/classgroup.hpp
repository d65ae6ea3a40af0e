#ifndef QFEXP_CLASSGROUP_HPP
#define QFEXP_CLASSGROUP_HPP

// The class group Cl(D) realized on reduced forms.

#include "qfexp/qform.hpp"

#include <string>
#include <vector>

namespace qfexp {

struct ClassGroupSummary
{
    Discriminant D;
    i64 h;
    i64 exponent;
    /* invariant factors d1 | d2 | ... | dk, all > 1; empty for the trivial group */
    std::vector<i64> elementary_divisors;

    /* "2x2x4" style; "1" for the trivial group */
    std::string label() const;
};

/* label() syntax back to divisors; "1" or "" gives the empty list */
std::vector<i64> parse_group_label(std::string const & label);

inline constexpr i64 group_structure_budget = 100000;

Form identity(Discriminant D);

bool is_identity(Form const & g);

/* Reduced Dirichlet composition. Throws std::domain_error on discriminant mismatch. */
Form compose(Form const & g1, Form const & g2);

Form square(Form const & g);

Form inverse(Form const & g);

Form power(Form const & g, u64 n);

i64 element_order(Form const & g);

i64 exponent(Discriminant D);

/* Early-exit test of g^E == 1 over all reduced forms. */
bool exponent_divides(Discriminant D, i64 E);

/* Throws std::length_error when h(D) exceeds group_structure_budget. */
ClassGroupSummary group_structure(Discriminant D);

/*
 * Group structure from an explicit list of reduced forms whose orders are
 * known to divide order_multiple (e.g. h, or a verified exponent).
 */
ClassGroupSummary group_structure(Discriminant D, std::vector<Form> const & forms,
                                  i64 order_multiple);

std::vector<Form> ambiguous_forms(Discriminant D);

} // namespace qfexp

#endif /* QFEXP_CLASSGROUP_HPP */
