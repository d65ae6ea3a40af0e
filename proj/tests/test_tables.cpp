#include "qfexp/tables.hpp"

#include "doctest.h"
#include "json.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

using namespace qfexp;

namespace {

std::filesystem::path reference_dir()
{
    return QFEXP_REFERENCE_DIR;
}

ExponentTable build(i64 E, i64 bound = 0, i64 threshold = 100, int threads = 1)
{
    TableOptions opt;
    opt.scan_bound = bound ? bound : default_scan_bound(E);
    opt.prune_threshold = threshold;
    opt.threads = threads;
    return discriminants_with_exponent(E, opt);
}

std::string csv_of(ExponentTable const & t)
{
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

std::vector<i64> values(std::vector<Discriminant> const & v)
{
    std::vector<i64> out;
    for (auto const & d : v)
        out.push_back(d.value());
    return out;
}

std::set<i64> discs(ExponentTable const & t)
{
    std::set<i64> out;
    for (auto const & e : t.entries)
        out.insert(e.D.value());
    return out;
}

std::map<i64, ExponentTable> const & small_tables()
{
    static std::map<i64, ExponentTable> cache = [] {
        std::map<i64, ExponentTable> m;
        for (i64 E : {1, 2, 3, 5, 7})
            m.emplace(E, build(E));
        return m;
    }();
    return cache;
}

} // namespace

TEST_SUITE("tables") {

TEST_CASE("scan_fundamental examples")
{
    CHECK(values(scan_fundamental(1, 200)) == std::vector<i64>{-3, -4, -7, -8, -11, -19, -43, -67, -163});
    auto two = values(scan_fundamental(2, 10000));
    CHECK(std::find(two.begin(), two.end(), -5460) != two.end());
    auto three = values(scan_fundamental(3, 5000));
    CHECK(std::find(three.begin(), three.end(), -23) != three.end());
    CHECK(std::find(three.begin(), three.end(), -4027) != three.end());
    /* exponent dividing 3 also admits the trivial groups */
    CHECK(std::find(three.begin(), three.end(), -163) != three.end());
    CHECK_THROWS_AS(scan_fundamental(9, 100), std::invalid_argument);
    CHECK_THROWS_AS(scan_fundamental(0, 100), std::invalid_argument);
}

TEST_CASE("scan_fundamental returns exactly the fundamental discriminants passing the test")
{
    for (i64 E : {1, 2, 4}) {
        std::vector<i64> want;
        for (i64 n = 3; n <= 30000; ++n)
            if (is_valid_discriminant(-n) && Discriminant(-n).is_fundamental()
                && exponent_divides(Discriminant(-n), E))
                want.push_back(-n);
        CHECK(values(scan_fundamental(E, 30000)) == want);
        CHECK(values(scan_fundamental(E, 30000, 3)) == want);
    }
    /* block edges of the segmented sieve */
    auto big = values(scan_fundamental(2, 600000));
    CHECK(big.back() == -5460);
}

TEST_CASE("default scan bounds")
{
    CHECK(default_scan_bound(1) == 10000);
    CHECK(default_scan_bound(3) == 10000);
    CHECK(default_scan_bound(5) == 50000);
    CHECK(default_scan_bound(7) == 150000);
    CHECK(default_scan_bound(4) == 10000000);
    CHECK(default_scan_bound(6) == 10000000);
    CHECK(default_scan_bound(8) == 500000000);
}

TEST_CASE("tables 1, 2, 3, 5, 7 match the reference lists")
{
    std::map<i64, std::pair<i64, i64>> want{
        {1, {13, 163}}, {2, {88, 7392}}, {3, {29, 4027}}, {5, {31, 37363}}, {7, {40, 118843}}};
    for (auto const & [E, t] : small_tables()) {
        CHECK(t.count() == want[E].first);
        CHECK(t.max_abs() == want[E].second);
        auto ref = load_reference(reference_dir(), E);
        REQUIRE(ref.has_entries());
        auto diff = diff_against_reference(ref, t);
        CHECK(diff.empty());
        CHECK(diff.missing.empty());
        CHECK(diff.extra.empty());
        CHECK(diff.label_mismatches.empty());
    }
}

TEST_CASE("table entries are sorted and have exponent exactly E")
{
    std::map<i64, i64> seen;
    for (auto const & [E, t] : small_tables()) {
        for (std::size_t i = 0; i < t.entries.size(); ++i) {
            auto const & e = t.entries[i];
            if (i > 0)
                CHECK(t.entries[i - 1].D.abs() < e.D.abs());
            CHECK(exponent(e.D) == E);
            CHECK(e.exponent == E);
            CHECK(e.d0.value() * e.f * e.f == e.D.value());
            CHECK(e.h == class_number(e.D));
            CHECK(seen.emplace(e.D.value(), E).second);
        }
    }
}

TEST_CASE("surjection closure of table entries")
{
    for (auto const & [E, t] : small_tables())
        for (auto const & e : t.entries)
            for (u64 g : divisors(u64(e.f))) {
                Discriminant D(e.d0.value() * i64(g) * i64(g));
                CHECK(E % exponent(D) == 0);
            }
}

TEST_CASE("prune_by_divisors")
{
    CHECK_FALSE(prune_by_divisors(Discriminant(-3), 6, 1, 100));
    CHECK(prune_by_divisors(Discriminant(-3), 3, 1, 100));
    CHECK(prune_by_divisors(Discriminant(-3), 6, 1, 1));
    for (i64 E : {1, 2, 3, 5, 7}) {
        auto ref = load_reference(reference_dir(), E);
        for (auto const & [D, label] : ref.entries) {
            auto [d0, f] = factor_discriminant(Discriminant(D));
            CHECK_MESSAGE(prune_by_divisors(d0, f, E, 100), "D = " << D);
        }
    }
}

TEST_CASE("pruning threshold does not change the output")
{
    for (i64 E : {1, 2, 3, 5})
        CHECK(csv_of(build(E, 0, 1)) == csv_of(small_tables().at(E)));
    CHECK(csv_of(build(4, 200000, 1)) == csv_of(build(4, 200000, 100)));
}

TEST_CASE("conductors for single seeds")
{
    auto rows = conductors_with_exponent(Discriminant(-3), 1, 100);
    std::vector<i64> fs;
    for (auto const & e : rows)
        fs.push_back(e.f);
    CHECK(fs == std::vector<i64>{1, 2, 3});
    rows = conductors_with_exponent(Discriminant(-7), 1, 100);
    CHECK(rows.size() == 2);
    rows = conductors_with_exponent(Discriminant(-163), 1, 100);
    CHECK(rows.size() == 1);
    ScanStats st;
    rows = conductors_with_exponent(Discriminant(-3), 3, 100, &st);
    CHECK(st.full_checks > 0);
    CHECK(std::any_of(rows.begin(), rows.end(), [](auto const & e) { return e.D.value() == -108; }));
}

TEST_CASE("diff harness self-test")
{
    auto const & t = small_tables().at(1);
    auto ref = load_reference(reference_dir(), 1);
    auto removed = ref.entries[5];
    auto tampered = ref;
    tampered.entries.erase(tampered.entries.begin() + 5);
    tampered.count -= 1;
    auto diff = diff_against_reference(tampered, t);
    CHECK_FALSE(diff.empty());
    CHECK(diff.extra == std::vector<i64>{removed.first});
    CHECK(diff.missing.empty());
    CHECK(diff.label_mismatches.empty());

    tampered = ref;
    tampered.entries[0].second = "2";
    diff = diff_against_reference(tampered, t);
    REQUIRE(diff.label_mismatches.size() == 1);
    CHECK(diff.label_mismatches[0].D == ref.entries[0].first);

    ReferenceTable summary_only{1, 14, 163, {}};
    diff = diff_against_reference(summary_only, t);
    CHECK(diff.shortfall == 1);
    CHECK_FALSE(diff.empty());

    CHECK_THROWS(load_reference("/nonexistent/reference", 1));
}

TEST_CASE("summary-only references report a shortfall")
{
    auto t = build(4, 1000);
    auto ref = load_reference(reference_dir(), 4);
    ReferenceTable summary{4, ref.count, ref.max_abs, {}};
    auto diff = diff_against_reference(summary, t);
    CHECK(diff.shortfall == 485 - t.count());
    CHECK(diff.shortfall > 0);
    CHECK(diff.max_abs_mismatch);
}

TEST_CASE("output is deterministic across runs and thread counts")
{
    for (i64 E : {3, 5}) {
        auto a = csv_of(build(E, 0, 100, 1));
        auto b = csv_of(build(E, 0, 100, 4));
        auto c = csv_of(build(E, 0, 100, 1));
        CHECK(a == b);
        CHECK(a == c);
    }
    auto a = csv_of(build(4, 300000, 100, 1));
    auto b = csv_of(build(4, 300000, 100, 3));
    CHECK(a == b);
}

TEST_CASE("enlarging the scan bound never removes entries")
{
    for (i64 E : {2, 4, 6}) {
        std::set<i64> prev;
        for (i64 bound : {500, 2000, 10000, 60000}) {
            auto cur = discs(build(E, bound));
            CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            prev = cur;
        }
    }
}

TEST_CASE("odd-or-minus-4 filter of exponent 1 and 2")
{
    std::map<std::string, int> by_label;
    int total = 0;
    for (i64 E : {1, 2})
        for (auto const & e : small_tables().at(E).entries)
            if (e.D.is_odd() || e.D.value() == -4) {
                ++by_label[e.label()];
                ++total;
            }
    CHECK(total == 37);
    CHECK(by_label["1"] == 9);
    CHECK(by_label["2"] == 14);
    CHECK(by_label["2x2"] == 10);
    CHECK(by_label["2x2x2"] == 4);
}

TEST_CASE("file formats")
{
    auto const & t = small_tables().at(3);
    auto csv = csv_of(t);
    CHECK(csv.rfind("discriminant,d0,f,h,exponent,group\n", 0) == 0);
    CHECK(csv.find("-108,-3,6,3,3,3\n") != std::string::npos);
    CHECK(csv.find("-4027,-4027,1,9,3,3x3\n") != std::string::npos);

    std::ostringstream js;
    write_json(js, t);
    auto j = nlohmann::json::parse(js.str());
    CHECK(j["E"] == 3);
    CHECK(j["scan_bound"] == 10000);
    CHECK(j["version"] == tool_version);
    CHECK(j["count"] == 29);
    CHECK(j["max_abs"] == 4027);
    CHECK(j["entries"].size() == 29);
    CHECK(j["entries"][0]["discriminant"] == -23);
    CHECK(j["entries"][0]["group"] == "3");

    std::ostringstream plain;
    write_plain(plain, t);
    CHECK(plain.str().find("29 discriminants") != std::string::npos);
}

}
