#ifndef QFEXP_TABLES_HPP
#define QFEXP_TABLES_HPP

// Discriminants D = d0 f^2 whose class group has a given exponent E.
//
// 1. Scan fundamental d0 with Exp Cl(d0) | E (Cl(d0 f^2) surjects onto Cl(d0)).
// 2. Candidate conductors are the divisors of theta(12 |O_d0^x| E).
// 3. Cl(d0 f^2) also surjects onto Cl(d0 f'^2) for f' | f, so a candidate is
//    only examined once its divisors pass; the rest of the lattice is cut off.

#include "qfexp/classgroup.hpp"
#include "qfexp/conductor.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qfexp {

inline constexpr char tool_version[] = "1.0.0";

struct TableEntry
{
    Discriminant D;
    Discriminant d0;
    i64 f;
    i64 h;
    i64 exponent;
    std::vector<i64> group;

    std::string label() const;
};

struct ScanStats
{
    i64 fundamental_scanned = 0;
    i64 fundamental_seeds = 0;
    i64 candidates_examined = 0;
    i64 pruned_by_divisors = 0;
    i64 full_checks = 0;
    /* lattice nodes whose discriminant would not fit in 64 bits */
    i64 overflow_skipped = 0;
};

struct ExponentTable
{
    i64 E;
    i64 scan_bound;
    std::vector<TableEntry> entries;
    ScanStats stats;

    i64 count() const { return i64(entries.size()); }
    i64 max_abs() const;
};

struct TableOptions
{
    i64 scan_bound;
    i64 prune_threshold = 100;
    int threads = 1;
};

inline constexpr i64 min_exponent = 1;
inline constexpr i64 max_exponent = 8;

i64 default_scan_bound(i64 E);

std::vector<Discriminant> scan_fundamental(i64 E, i64 bound, int threads = 1);

/* false iff some divisor f' | f with 1 <= f' <= threshold fails exponent_divides(d0 f'^2, E) */
bool prune_by_divisors(Discriminant d0, i64 f, i64 E, i64 threshold);

/* All f for one seed d0 with Exp Cl(d0 f^2) == E. */
std::vector<TableEntry> conductors_with_exponent(Discriminant d0, i64 E, i64 prune_threshold,
                                                 ScanStats * stats = nullptr);

ExponentTable discriminants_with_exponent(i64 E, TableOptions const & options);

// Reference data and diffs.

struct ReferenceTable
{
    i64 E;
    i64 count;
    i64 max_abs;
    /* empty when only the summary is known */
    std::vector<std::pair<i64, std::string>> entries;

    bool has_entries() const { return !entries.empty(); }
};

struct LabelMismatch
{
    i64 D;
    std::string expected;
    std::string actual;
};

struct DiffReport
{
    std::vector<i64> missing;
    std::vector<i64> extra;
    std::vector<LabelMismatch> label_mismatches;
    /* reference count minus computed count when only a summary is available */
    i64 shortfall = 0;
    bool max_abs_mismatch = false;

    bool empty() const;
};

/* Reads <dir>/summary.csv and, if present, <dir>/table_<E>.csv. */
ReferenceTable load_reference(std::filesystem::path const & dir, i64 E);

DiffReport diff_against_reference(ReferenceTable const & reference, ExponentTable const & computed);

std::optional<std::filesystem::path> find_reference_dir();

void write_csv(std::ostream & os, ExponentTable const & table);
void write_json(std::ostream & os, ExponentTable const & table);
void write_plain(std::ostream & os, ExponentTable const & table);

} // namespace qfexp

#endif /* QFEXP_TABLES_HPP */
