#include "qfexp/tables.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace qfexp {

std::string TableEntry::label() const
{
    return ClassGroupSummary{D, h, exponent, group}.label();
}

i64 ExponentTable::max_abs() const
{
    return entries.empty() ? 0 : i64(entries.back().D.abs());
}

i64 default_scan_bound(i64 E)
{
    switch (E) {
    case 1:
    case 2:
    case 3:
        return 10'000;
    case 5:
        return 50'000;
    case 7:
        return 150'000;
    case 8:
        /* the largest seed of the E = 8 table is -430950520 */
        return 500'000'000;
    default:
        return 10'000'000;
    }
}

namespace {

void check_exponent_range(i64 E)
{
    if (E < min_exponent || E > max_exponent)
        throw std::invalid_argument("exponent must be in 1..8");
}

/* Runs body(i) for i in [0, n) on up to `threads` workers. */
template <typename Body>
void parallel_for(std::size_t n, int threads, Body body)
{
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < n;)
                    body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
            }
        });
    }
    for (auto & th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

bool disc_of(Discriminant d0, u64 f, i64 & out)
{
    u128 sq;
    if (!checked_mul(u128(f), u128(f), sq))
        return false;
    u128 absd;
    if (!checked_mul(sq, u128(d0.abs()), absd) || absd > (u128(1) << 62))
        return false;
    out = -i64(absd);
    return true;
}

} // namespace

std::vector<Discriminant> scan_fundamental(i64 E, i64 bound, int threads)
{
    check_exponent_range(E);
    if (bound < 3)
        return {};
    /* odd p: p^2 | n iff p^2 | n/4, so one sieve over odd squares decides both shapes */
    std::vector<u64> odd_primes;
    for (u64 p : primes_up_to(isqrt(u64(bound))))
        if (p != 2)
            odd_primes.push_back(p);

    constexpr i64 block = 1 << 18;
    std::size_t const nblocks = std::size_t(bound / block + 1);
    std::vector<std::vector<Discriminant>> found(nblocks);
    parallel_for(nblocks, threads, [&](std::size_t bi) {
        i64 const lo = i64(bi) * block;
        i64 const hi = std::min<i64>(bound, lo + block - 1);
        std::vector<char> odd_squarefree(std::size_t(hi - lo + 1), 1);
        for (u64 p : odd_primes) {
            i64 sq = i64(p * p);
            if (sq > hi)
                break;
            for (i64 m = (lo + sq - 1) / sq * sq; m <= hi; m += sq)
                odd_squarefree[std::size_t(m - lo)] = 0;
        }
        for (i64 n = std::max<i64>(lo, 3); n <= hi; ++n) {
            if (!odd_squarefree[std::size_t(n - lo)])
                continue;
            /* -n = 1 mod 4 squarefree, or -n = 4m with m = 2, 3 mod 4 */
            i64 r16 = n % 16;
            if (n % 4 != 3 && r16 != 4 && r16 != 8)
                continue;
            Discriminant d(-n);
            if (exponent_divides(d, E))
                found[bi].push_back(d);
        }
    });
    std::vector<Discriminant> out;
    for (auto & v : found)
        out.insert(out.end(), v.begin(), v.end());
    return out;
}

bool prune_by_divisors(Discriminant d0, i64 f, i64 E, i64 threshold)
{
    if (f < 1)
        throw std::invalid_argument("prune_by_divisors: f must be >= 1");
    for (u64 fp : divisors(u64(f))) {
        if (i64(fp) > threshold)
            break;
        i64 D;
        if (!disc_of(d0, fp, D))
            throw std::overflow_error("prune_by_divisors: discriminant exceeds 64 bits");
        if (!exponent_divides(Discriminant(D), E))
            return false;
    }
    return true;
}

std::vector<TableEntry> conductors_with_exponent(Discriminant d0, i64 E, i64 prune_threshold,
                                                 ScanStats * stats)
{
    check_exponent_range(E);
    ScanStats local;
    auto const lattice = theta_factors(d0, u64(lemma_5_1_bound(d0, E)));

    std::map<u64, bool> verdict;
    auto passes = [&](u64 f) {
        auto it = verdict.find(f);
        if (it != verdict.end())
            return it->second;
        i64 D;
        bool ok;
        if (!disc_of(d0, f, D)) {
            ++local.overflow_skipped;
            ok = false;
        } else {
            ++local.full_checks;
            ok = exponent_divides(Discriminant(D), E);
        }
        verdict.emplace(f, ok);
        return ok;
    };
    auto small_divisors_pass = [&](u64 f) {
        for (u64 fp : divisors(f)) {
            if (i64(fp) > prune_threshold || fp == f)
                break;
            if (!passes(fp))
                return false;
        }
        return true;
    };

    std::vector<u64> accepted;
    /* depth-first over the divisor lattice, primes in increasing order */
    auto dfs = [&](auto && self, std::size_t start, u64 f) -> void {
        for (std::size_t j = start; j < lattice.size(); ++j) {
            u64 p = lattice[j].p;
            u128 fk = f;
            for (unsigned k = 1; k <= lattice[j].k; ++k) {
                fk *= p;
                if (fk > (u128(1) << 62)) {
                    ++local.overflow_skipped;
                    break;
                }
                ++local.candidates_examined;
                if (!small_divisors_pass(u64(fk))) {
                    ++local.pruned_by_divisors;
                    break;
                }
                if (!passes(u64(fk)))
                    break;
                accepted.push_back(u64(fk));
                self(self, j + 1, u64(fk));
            }
        }
    };
    ++local.candidates_examined;
    if (passes(1)) {
        accepted.push_back(1);
        dfs(dfs, 0, 1);
    }

    std::vector<TableEntry> out;
    for (u64 f : accepted) {
        i64 Dv = 0;
        disc_of(d0, f, Dv);
        Discriminant D(Dv);
        auto forms = enumerate_reduced(D);
        auto summary = group_structure(D, forms, E);
        if (summary.exponent == E)
            out.push_back(TableEntry{D, d0, i64(f), summary.h, summary.exponent,
                                     summary.elementary_divisors});
    }
    if (stats) {
        stats->candidates_examined += local.candidates_examined;
        stats->pruned_by_divisors += local.pruned_by_divisors;
        stats->full_checks += local.full_checks;
        stats->overflow_skipped += local.overflow_skipped;
    }
    return out;
}

ExponentTable discriminants_with_exponent(i64 E, TableOptions const & options)
{
    check_exponent_range(E);
    ExponentTable table{E, options.scan_bound, {}, {}};
    auto seeds = scan_fundamental(E, options.scan_bound, options.threads);
    table.stats.fundamental_seeds = i64(seeds.size());

    std::vector<std::vector<TableEntry>> per_seed(seeds.size());
    std::vector<ScanStats> per_stats(seeds.size());
    parallel_for(seeds.size(), options.threads, [&](std::size_t i) {
        per_seed[i] = conductors_with_exponent(seeds[i], E, options.prune_threshold, &per_stats[i]);
    });
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        auto & s = per_stats[i];
        table.stats.candidates_examined += s.candidates_examined;
        table.stats.pruned_by_divisors += s.pruned_by_divisors;
        table.stats.full_checks += s.full_checks;
        table.stats.overflow_skipped += s.overflow_skipped;
        for (auto & e : per_seed[i])
            table.entries.push_back(std::move(e));
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](TableEntry const & x, TableEntry const & y) { return x.D.abs() < y.D.abs(); });
    table.entries.erase(std::unique(table.entries.begin(), table.entries.end(),
                                    [](TableEntry const & x, TableEntry const & y) { return x.D == y.D; }),
                        table.entries.end());
    return table;
}

// ---------------------------------------------------------------------------

bool DiffReport::empty() const
{
    return missing.empty() && extra.empty() && label_mismatches.empty() && shortfall == 0
           && !max_abs_mismatch;
}

namespace {

std::vector<std::string> split_csv(std::string const & line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    return out;
}

} // namespace

ReferenceTable load_reference(std::filesystem::path const & dir, i64 E)
{
    check_exponent_range(E);
    ReferenceTable ref{E, -1, -1, {}};

    std::ifstream summary(dir / "summary.csv");
    if (!summary)
        throw std::runtime_error("missing reference file " + (dir / "summary.csv").string());
    std::string line;
    std::getline(summary, line); /* header */
    while (std::getline(summary, line)) {
        auto cells = split_csv(line);
        if (cells.size() >= 3 && std::stoll(cells[0]) == E) {
            ref.count = std::stoll(cells[1]);
            ref.max_abs = std::stoll(cells[2]);
        }
    }
    if (ref.count < 0)
        throw std::runtime_error("no summary row for exponent " + std::to_string(E));

    std::ifstream table(dir / ("table_" + std::to_string(E) + ".csv"));
    if (table) {
        std::getline(table, line);
        while (std::getline(table, line)) {
            if (line.empty())
                continue;
            auto cells = split_csv(line);
            if (cells.size() != 6)
                throw std::runtime_error("malformed reference row: " + line);
            ref.entries.emplace_back(std::stoll(cells[0]), cells[5]);
        }
    }
    return ref;
}

DiffReport diff_against_reference(ReferenceTable const & reference, ExponentTable const & computed)
{
    DiffReport report;
    std::map<i64, std::string> have;
    for (auto const & e : computed.entries)
        have.emplace(e.D.value(), e.label());

    if (reference.has_entries()) {
        std::map<i64, std::string> want(reference.entries.begin(), reference.entries.end());
        for (auto const & [D, label] : want) {
            auto it = have.find(D);
            if (it == have.end())
                report.missing.push_back(D);
            else if (it->second != label)
                report.label_mismatches.push_back({D, label, it->second});
        }
        for (auto const & [D, label] : have)
            if (!want.count(D))
                report.extra.push_back(D);
    }
    report.shortfall = reference.count - computed.count();
    report.max_abs_mismatch = computed.max_abs() != reference.max_abs;
    return report;
}

std::optional<std::filesystem::path> find_reference_dir()
{
    namespace fs = std::filesystem;
    for (fs::path p : {fs::path("reference"), fs::path("../reference"), fs::path("../../reference")})
        if (fs::exists(p / "summary.csv"))
            return p;
#ifdef QFEXP_REFERENCE_DIR
    if (fs::exists(fs::path(QFEXP_REFERENCE_DIR) / "summary.csv"))
        return fs::path(QFEXP_REFERENCE_DIR);
#endif
    return std::nullopt;
}

void write_csv(std::ostream & os, ExponentTable const & table)
{
    os << "discriminant,d0,f,h,exponent,group\n";
    for (auto const & e : table.entries)
        os << e.D.value() << ',' << e.d0.value() << ',' << e.f << ',' << e.h << ',' << e.exponent
           << ',' << e.label() << '\n';
}

void write_json(std::ostream & os, ExponentTable const & table)
{
    nlohmann::ordered_json j;
    j["E"] = table.E;
    j["scan_bound"] = table.scan_bound;
    j["version"] = tool_version;
    j["count"] = table.count();
    j["max_abs"] = table.max_abs();
    auto & rows = j["entries"] = nlohmann::ordered_json::array();
    for (auto const & e : table.entries) {
        nlohmann::ordered_json r;
        r["discriminant"] = e.D.value();
        r["d0"] = e.d0.value();
        r["f"] = e.f;
        r["h"] = e.h;
        r["exponent"] = e.exponent;
        r["group"] = e.label();
        rows.push_back(std::move(r));
    }
    os << j.dump(2) << '\n';
}

void write_plain(std::ostream & os, ExponentTable const & table)
{
    os << "exponent " << table.E << ": " << table.count() << " discriminants, largest |D| = "
       << table.max_abs() << " (fundamental scan bound " << table.scan_bound << ")\n";
    std::map<std::vector<i64>, std::vector<i64>> by_group;
    for (auto const & e : table.entries)
        by_group[e.group].push_back(e.D.value());
    for (auto const & [group, ds] : by_group) {
        os << "  " << ClassGroupSummary{Discriminant(-3), 0, 0, group}.label() << ":";
        for (i64 d : ds)
            os << ' ' << d;
        os << '\n';
    }
}

} // namespace qfexp
