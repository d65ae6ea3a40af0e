#include "qfexp/analytic.hpp"
#include "qfexp/boundary.hpp"
#include "qfexp/classgroup.hpp"
#include "qfexp/conductor.hpp"
#include "qfexp/tables.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

using namespace qfexp;

namespace {

int const exit_ok = 0;
int const exit_mismatch = 1;
int const exit_usage = 2;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt(Rational r)
{
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

Rational parse_rational(std::string const & s)
{
    static std::regex const re(R"(\s*(-?\d+)(?:/(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re))
        throw UsageError("not a rational number: " + s);
    i64 den = m[2].matched ? std::stoll(m[2]) : 1;
    if (den == 0)
        throw UsageError("zero denominator: " + s);
    return make_rational(std::stoll(m[1]), den);
}

Discriminant parse_discriminant(i64 d)
{
    if (!is_valid_discriminant(d))
        throw UsageError("invalid discriminant " + std::to_string(d)
                         + " (must be negative and 0 or 1 mod 4)");
    return Discriminant(d);
}

/* Output goes to --out when given, stdout otherwise. */
class Output
{
public:
    explicit Output(std::string const & path)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream & stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct Common
{
    std::string format = "plain";
    std::string out;
};

void add_common(CLI::App * cmd, Common & c, std::string const & default_format)
{
    c.format = default_format;
    cmd->add_option("--format", c.format, "csv, json or plain")
        ->check(CLI::IsMember({"csv", "json", "plain"}))
        ->capture_default_str();
    cmd->add_option("--out", c.out, "write output to PATH instead of stdout");
}

// classgroup

int cmd_classgroup(i64 d, Common const & c)
{
    Discriminant D = parse_discriminant(d);
    auto s = group_structure(D);
    auto forms = enumerate_reduced(D);
    bool on_boundary = all_on_boundary(D);
    Output out(c.out);
    auto & os = out.stream();
    if (c.format == "json") {
        nlohmann::ordered_json j;
        j["discriminant"] = d;
        j["h"] = s.h;
        j["exponent"] = s.exponent;
        j["group"] = s.label();
        j["all_on_boundary"] = on_boundary;
        auto & arr = j["forms"] = nlohmann::ordered_json::array();
        for (Form const & g : forms)
            arr.push_back({{"a", g.a}, {"b", g.b}, {"c", g.c},
                           {"location", std::string(to_string(classify_location(g)))}});
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "a,b,c,order,location\n";
        for (Form const & g : forms)
            os << g.a << ',' << g.b << ',' << g.c << ',' << element_order(g) << ','
               << to_string(classify_location(g)) << '\n';
    } else {
        os << "D = " << d << "\n";
        os << "h = " << s.h << "\n";
        os << "exponent = " << s.exponent << "\n";
        os << "group = " << s.label() << "\n";
        os << "all on boundary = " << (on_boundary ? "yes" : "no") << "\n";
        for (Form const & g : forms)
            os << "  " << g << "  " << to_string(classify_location(g)) << "\n";
    }
    return exit_ok;
}

// tables

struct TablesArgs
{
    i64 E = 0;
    i64 scan_bound = 0;
    i64 prune_threshold = 100;
    int threads = 1;
    bool verify = false;
    std::string reference;
};

void print_diff(std::ostream & os, DiffReport const & r, ReferenceTable const & ref)
{
    for (i64 d : r.missing)
        os << "missing " << d << "\n";
    for (i64 d : r.extra)
        os << "extra " << d << "\n";
    for (auto const & m : r.label_mismatches)
        os << "label " << m.D << ": expected " << m.expected << ", got " << m.actual << "\n";
    if (r.shortfall > 0)
        os << "shortfall " << r.shortfall << " (reference count " << ref.count << ")\n";
    else if (r.shortfall < 0)
        os << "surplus " << -r.shortfall << " (reference count " << ref.count << ")\n";
    if (r.max_abs_mismatch)
        os << "max |D| differs from reference " << ref.max_abs << "\n";
}

int cmd_tables(TablesArgs const & a, Common const & c)
{
    if (a.E < min_exponent || a.E > max_exponent)
        throw UsageError("-E must be in 1..8");
    if (a.threads < 1)
        throw UsageError("--threads must be >= 1");
    if (a.prune_threshold < 1)
        throw UsageError("--prune-threshold must be >= 1");
    TableOptions opt;
    opt.scan_bound = a.scan_bound > 0 ? a.scan_bound : default_scan_bound(a.E);
    opt.prune_threshold = a.prune_threshold;
    opt.threads = a.threads;

    std::optional<ReferenceTable> ref;
    if (a.verify) {
        std::filesystem::path dir;
        if (!a.reference.empty())
            dir = a.reference;
        else if (auto found = find_reference_dir())
            dir = *found;
        else
            throw UsageError("no reference directory found; pass --reference");
        try {
            ref = load_reference(dir, a.E);
        } catch (std::runtime_error const & e) {
            throw UsageError(e.what());
        }
    }

    auto table = discriminants_with_exponent(a.E, opt);
    {
        Output out(c.out);
        auto & os = out.stream();
        if (c.format == "csv")
            write_csv(os, table);
        else if (c.format == "json")
            write_json(os, table);
        else
            write_plain(os, table);
    }
    auto const & st = table.stats;
    std::cerr << "E=" << a.E << " scan_bound=" << table.scan_bound << " seeds=" << st.fundamental_seeds
              << " candidates=" << st.candidates_examined << " pruned=" << st.pruned_by_divisors
              << " full_checks=" << st.full_checks << " overflow_skipped=" << st.overflow_skipped
              << "\n";
    if (!ref)
        return exit_ok;
    auto diff = diff_against_reference(*ref, table);
    if (diff.empty()) {
        std::cerr << "verified: " << table.count() << " discriminants, max |D| " << table.max_abs()
                  << "\n";
        return exit_ok;
    }
    print_diff(std::cerr, diff, *ref);
    return exit_mismatch;
}

// equidist and boundary-count

int cmd_equidist(i64 delta, int bins, std::string const & tmax, Common const & c)
{
    if (delta < 3)
        throw UsageError("--delta must be >= 3");
    if (bins < 1)
        throw UsageError("--bins must be >= 1");
    Rational K = parse_rational(tmax);
    if (2 * K.num <= K.den)
        throw UsageError("--tmax must exceed 1/2");
    auto rows = equidistribution_report(delta, bins, K);
    Output out(c.out);
    auto & os = out.stream();
    if (c.format == "json") {
        nlohmann::ordered_json j;
        j["delta"] = delta;
        j["tmax"] = fmt(K);
        auto & arr = j["bins"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            arr.push_back({{"bin", i}, {"x_lo", to_double(rows[i].x_lo)}, {"x_hi", to_double(rows[i].x_hi)},
                           {"exact", rows[i].exact}, {"predicted", fmt(rows[i].predicted)},
                           {"relative_error", fmt(rows[i].relative_error())}});
        os << j.dump(2) << '\n';
        return exit_ok;
    }
    os << "bin,x_lo,x_hi,exact,predicted,relative_error\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        os << i << ',' << fmt(to_double(rows[i].x_lo)) << ',' << fmt(to_double(rows[i].x_hi)) << ','
           << rows[i].exact << ',' << fmt(rows[i].predicted) << ',' << fmt(rows[i].relative_error())
           << '\n';
    return exit_ok;
}

int cmd_boundary_count(i64 delta, std::string const & xs, std::string const & ys, Common const & c)
{
    if (delta < 3)
        throw UsageError("--delta must be >= 3");
    Rational X = parse_rational(xs), Y = parse_rational(ys);
    if (2 * X.num < X.den || X.num * Y.den >= Y.num * X.den)
        throw UsageError("need 1/2 <= X < Y");
    i64 lb = count_left_boundary(delta);
    i64 la = count_lower_arc(delta);
    auto r = count_R_interval(delta, X, Y);
    Output out(c.out);
    auto & os = out.stream();
    if (c.format == "json") {
        nlohmann::ordered_json j;
        j["delta"] = delta;
        j["left_boundary"] = lb;
        j["lower_arc"] = la;
        j["boundary_total"] = lb + la - 1;
        j["X"] = fmt(X);
        j["Y"] = fmt(Y);
        j["R_exact"] = r.exact;
        j["R_predicted"] = fmt(r.predicted);
        j["relative_error"] = fmt(r.relative_error());
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "delta,left_boundary,lower_arc,boundary_total,X,Y,R_exact,R_predicted,relative_error\n";
        os << delta << ',' << lb << ',' << la << ',' << lb + la - 1 << ',' << fmt(X) << ',' << fmt(Y)
           << ',' << r.exact << ',' << fmt(r.predicted) << ',' << fmt(r.relative_error()) << '\n';
    } else {
        os << "delta = " << delta << "\n";
        os << "left boundary points = " << lb << "\n";
        os << "lower arc points = " << la << "\n";
        os << "boundary points (corner once) = " << lb + la - 1 << "\n";
        os << "R count on [" << fmt(X) << ", " << fmt(Y) << "] = " << r.exact << ", predicted "
           << fmt(r.predicted) << ", relative error " << fmt(r.relative_error()) << "\n";
    }
    return exit_ok;
}

// conductors

int cmd_conductors(i64 d, i64 E, bool survivors, Common const & c)
{
    Discriminant d0 = parse_discriminant(d);
    if (!d0.is_fundamental())
        throw UsageError("-d must be a fundamental discriminant");
    if (E < 1)
        throw UsageError("-E must be >= 1");
    Output out(c.out);
    auto & os = out.stream();
    if (survivors) {
        if (E > max_exponent)
            throw UsageError("--survivors needs -E in 1..8");
        ExponentTable t{E, 0, conductors_with_exponent(d0, E, 100), {}};
        if (c.format == "json")
            write_json(os, t);
        else
            write_csv(os, t);
        return exit_ok;
    }
    auto cands = candidate_details(d0, E);
    if (c.format == "json") {
        nlohmann::ordered_json j;
        j["d0"] = d;
        j["E"] = E;
        j["bound"] = lemma_5_1_bound(d0, E);
        j["count"] = cands.size();
        auto & arr = j["candidates"] = nlohmann::ordered_json::array();
        for (auto const & x : cands)
            arr.push_back({{"f", to_string(x.f)}, {"L", to_string(x.L_value)}});
        os << j.dump(2) << '\n';
    } else {
        if (c.format == "plain")
            os << "# d0 = " << d << ", E = " << E << ", bound = " << lemma_5_1_bound(d0, E) << ", "
               << cands.size() << " candidates\n";
        os << "f,L\n";
        for (auto const & x : cands)
            os << to_string(x.f) << ',' << to_string(x.L_value) << '\n';
    }
    return exit_ok;
}

// verify

int verify_lemma41(i64 bound)
{
    i64 checked = 0;
    for (i64 n = 3; n <= bound; ++n) {
        if (!is_valid_discriminant(-n))
            continue;
        ++checked;
        if (!verify_lemma_4_1(Discriminant(-n))) {
            std::cout << "violation at D = " << -n << "\n";
            return exit_mismatch;
        }
    }
    std::cout << "lemma41: " << checked << " discriminants, no violations\n";
    return exit_ok;
}

int verify_thm12(i64 bound)
{
    std::map<std::string, std::vector<i64>> hits;
    for (i64 n = 3; n <= bound; ++n) {
        if (!is_valid_discriminant(-n))
            continue;
        Discriminant D(-n);
        bool predicted = exponent_divides(D, 2) && (D.is_odd() || n == 4);
        if (all_on_boundary(D) != predicted) {
            std::cout << "violation at D = " << -n << "\n";
            return exit_mismatch;
        }
        if (predicted)
            hits[group_structure(D).label()].push_back(-n);
    }
    std::size_t total = 0;
    for (auto const & [label, ds] : hits) {
        std::cout << label << ":";
        for (i64 d : ds)
            std::cout << ' ' << d;
        std::cout << "\n";
        total += ds.size();
    }
    std::cout << "thm12: " << total << " discriminants with every reduced form on the boundary\n";
    return exit_ok;
}

int verify_lemma51(i64 bound)
{
    i64 checked = 0;
    for (i64 n = 3; n <= bound; ++n) {
        if (!is_valid_discriminant(-n))
            continue;
        ++checked;
        if (!check_lemma_5_1(Discriminant(-n))) {
            std::cout << "violation at D = " << -n << "\n";
            return exit_mismatch;
        }
    }
    std::cout << "lemma51: " << checked << " discriminants, no violations\n";
    return exit_ok;
}

int verify_lemma52(i64 bound)
{
    for (i64 d0 : {-3, -4, -7, -8, -163}) {
        Discriminant D(d0);
        for (i64 f = 1; f <= bound; ++f) {
            std::map<u64, unsigned> th;
            for (auto [p, k] : theta_factors(D, u64(L_of(D, u64(f)))))
                th[p] = k;
            for (auto [p, k] : factor(u64(f)))
                if (th[p] < k) {
                    std::cout << "violation at d0 = " << d0 << ", f = " << f << "\n";
                    return exit_mismatch;
                }
        }
    }
    std::cout << "lemma52: f <= " << bound << " for d0 in {-3, -4, -7, -8, -163}, no violations\n";
    return exit_ok;
}

int verify_analytic(i64 bound)
{
    bool ok = true;
    for (i64 T = 1000; T <= bound; T *= 10) {
        auto c1 = check_coprime_count(T, 30, 4.0);
        auto c2 = check_totient_sum(T, 2.0);
        auto c3 = check_totient_over_square_sum(T, 12.0);
        for (auto const & [name, c] : {std::pair{"coprime_count(a=30)", c1}, std::pair{"totient_sum", c2},
                                       std::pair{"totient_over_square_sum", c3}}) {
            std::cout << name << " T=" << T << " error=" << fmt(c.abs_error())
                      << " envelope=" << fmt(c.error_bound) << (c.within() ? "" : "  FAIL") << "\n";
            ok = ok && c.within();
        }
    }
    /* sum phi(a) = (1 + sum mu(d) floor(T/d)^2) / 2 */
    i64 const T = std::min<i64>(bound, 10000);
    auto mu = mobius_sieve(T);
    i64 s = 0;
    for (i64 d = 1; d <= T; ++d)
        s += mu[d] * (T / d) * (T / d);
    bool identity = totient_sum(T).exact == (1 + s) / 2;
    std::cout << "mobius identity at T=" << T << (identity ? " holds" : " FAILS") << "\n";
    ok = ok && identity;
    auto g = gamma0(default_gamma0_terms);
    std::cout << "gamma0 = " << fmt(double(g.value)) << " (tail bound " << fmt(g.tail_bound) << ")\n";
    return ok ? exit_ok : exit_mismatch;
}

/* CLI11 reads "-d=-23" as the value "=-23"; split short options at '=' first. */
std::vector<std::string> normalize_args(int argc, char ** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a.size() > 3 && a[0] == '-' && a[1] != '-' && a[2] == '=') {
            args.push_back(a.substr(0, 2));
            args.push_back(a.substr(3));
        } else {
            args.push_back(a);
        }
    }
    std::reverse(args.begin(), args.end());
    return args;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Class groups of imaginary quadratic orders and small-exponent tables"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    Common cg_opts, tb_opts, eq_opts, bc_opts, cd_opts;
    i64 disc = 0;
    auto * cg = app.add_subcommand("classgroup", "class group of a discriminant");
    cg->add_option("-d,--discriminant", disc, "negative discriminant")->required();
    add_common(cg, cg_opts, "plain");

    TablesArgs ta;
    auto * tb = app.add_subcommand("tables", "discriminants whose class group has exponent E");
    tb->add_option("-E,--exponent", ta.E, "exponent, 1..8")->required();
    tb->add_option("--scan-bound", ta.scan_bound, "fundamental discriminant search limit");
    tb->add_option("--prune-threshold", ta.prune_threshold)->capture_default_str();
    tb->add_option("--threads", ta.threads)->capture_default_str();
    tb->add_flag("--verify", ta.verify, "diff against the reference data");
    tb->add_option("--reference", ta.reference, "reference data directory");
    add_common(tb, tb_opts, "csv");

    i64 delta = 0;
    int bins = 10;
    std::string tmax = "5";
    auto * eq = app.add_subcommand("equidist", "boundary equidistribution bins");
    eq->add_option("--delta", delta)->required();
    eq->add_option("--bins", bins)->capture_default_str();
    eq->add_option("--tmax,-K", tmax, "upper end of the t-range, rational")->capture_default_str();
    add_common(eq, eq_opts, "csv");

    std::string xs = "1", ys = "2";
    auto * bc = app.add_subcommand("boundary-count", "boundary point and R counts");
    bc->add_option("--delta", delta)->required();
    bc->add_option("--x", xs)->capture_default_str();
    bc->add_option("--y", ys)->capture_default_str();
    add_common(bc, bc_opts, "plain");

    i64 exponent_arg = 0;
    bool survivors = false;
    auto * cd = app.add_subcommand("conductors", "candidate conductors for a fundamental discriminant");
    cd->add_option("-d,--discriminant", disc)->required();
    cd->add_option("-E,--exponent", exponent_arg)->required();
    cd->add_flag("--survivors", survivors, "only conductors giving exponent exactly E");
    add_common(cd, cd_opts, "csv");

    std::string suite;
    i64 bound = 0;
    auto * vf = app.add_subcommand("verify", "run a property sweep");
    vf->add_option("suite", suite)
        ->required()
        ->check(CLI::IsMember({"lemma41", "thm12", "lemma51", "lemma52", "analytic"}));
    vf->add_option("--bound", bound, "sweep limit");

    try {
        app.parse(normalize_args(argc, argv));
    } catch (CLI::CallForHelp const & e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const & e) {
        return app.exit(e);
    } catch (CLI::CallForVersion const & e) {
        return app.exit(e);
    } catch (CLI::ParseError const & e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*cg)
            return cmd_classgroup(disc, cg_opts);
        if (*tb)
            return cmd_tables(ta, tb_opts);
        if (*eq)
            return cmd_equidist(delta, bins, tmax, eq_opts);
        if (*bc)
            return cmd_boundary_count(delta, xs, ys, bc_opts);
        if (*cd)
            return cmd_conductors(disc, exponent_arg, survivors, cd_opts);
        if (*vf) {
            std::map<std::string, std::pair<int (*)(i64), i64>> suites{
                {"lemma41", {verify_lemma41, 10000}}, {"thm12", {verify_thm12, 10000}},
                {"lemma51", {verify_lemma51, 100000}}, {"lemma52", {verify_lemma52, 10000}},
                {"analytic", {verify_analytic, 1000000}}};
            auto [fn, default_bound] = suites.at(suite);
            return fn(bound > 0 ? bound : default_bound);
        }
    } catch (UsageError const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (std::invalid_argument const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (std::domain_error const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (std::exception const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_mismatch;
    }
    return exit_usage;
}
