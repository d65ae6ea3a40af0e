#include "qfexp/classgroup.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qfexp {

std::string ClassGroupSummary::label() const
{
    if (elementary_divisors.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < elementary_divisors.size(); ++i) {
        if (i)
            s += 'x';
        s += std::to_string(elementary_divisors[i]);
    }
    return s;
}

std::vector<i64> parse_group_label(std::string const & label)
{
    std::vector<i64> out;
    if (label.empty() || label == "1")
        return out;
    std::stringstream ss(label);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        std::size_t used = 0;
        i64 v = std::stoll(part, &used);
        if (used != part.size() || v < 2)
            throw std::invalid_argument("bad group label '" + label + "'");
        out.push_back(v);
    }
    return out;
}

Form identity(Discriminant D)
{
    if (D.is_odd())
        return Form{1, 1, (1 - D.value()) / 4};
    return Form{1, 0, -D.value() / 4};
}

bool is_identity(Form const & g)
{
    return g.a == 1;
}

namespace {

/* b is reduced mod 2a before c is recovered from the discriminant */
Form finish(i128 a, i128 b, i64 d)
{
    i128 k = ceil_div(b - a, 2 * a);
    b -= 2 * a * k;
    i128 c = (b * b - d) / (4 * a);
    return reduce(Form{i64(a), i64(b), i64(c)});
}

i64 disc_value(Form const & g)
{
    return i64(i128(g.b) * g.b - 4 * i128(g.a) * g.c);
}

} // namespace

Form compose(Form const & g1, Form const & g2)
{
    i64 const d = disc_value(g1);
    if (d != disc_value(g2))
        throw std::domain_error("compose: discriminant mismatch");

    i128 s = (i128(g1.b) + g2.b) / 2;
    i128 u0, v0, v1, w;
    i128 g = xgcd(g1.a, g2.a, u0, v0);
    i128 e = xgcd(g, s, v1, w);
    i128 v = v0 * v1;
    i128 a2e = g2.a / e;
    i128 a3 = i128(g1.a) * a2e / e;
    i128 t = ((s - g2.b) * v - w * g2.c) % a3;
    i128 b3 = g2.b + 2 * a2e * t;
    return finish(a3, b3, d);
}

Form square(Form const & g)
{
    i128 u, v;
    i128 e = xgcd(g.a, g.b, u, v);
    i128 ae = g.a / e;
    i128 a3 = ae * ae;
    i128 t = (v * g.c) % a3;
    i128 b3 = g.b - 2 * ae * t;
    return finish(a3, b3, disc_value(g));
}

Form inverse(Form const & g)
{
    return reduce(Form{g.a, -g.b, g.c});
}

Form power(Form const & g, u64 n)
{
    Form base = reduce(g);
    Form acc = identity(discriminant(g));
    if (n == 0)
        return acc;
    int top = 63 - __builtin_clzll(n);
    acc = base;
    for (int i = top - 1; i >= 0; --i) {
        acc = square(acc);
        if ((n >> i) & 1)
            acc = compose(acc, base);
    }
    return acc;
}

i64 element_order(Form const & g)
{
    Form base = reduce(g);
    Form x = base;
    i64 n = 1;
    while (!is_identity(x)) {
        x = compose(x, base);
        ++n;
    }
    return n;
}

namespace {

i64 order_dividing(Form const & g, i64 multiple, std::vector<PrimePower> const & fac)
{
    i64 ord = multiple;
    for (auto [p, k] : fac) {
        for (unsigned j = 0; j < k; ++j) {
            if (is_identity(power(g, u64(ord / i64(p)))))
                ord /= i64(p);
            else
                break;
        }
    }
    return ord;
}

void ensure_budget(i64 h)
{
    if (h > group_structure_budget)
        throw std::length_error("class number " + std::to_string(h)
                                + " exceeds group structure budget");
}

} // namespace

i64 exponent(Discriminant D)
{
    auto forms = enumerate_reduced(D);
    i64 h = i64(forms.size());
    auto fac = factor(u64(h));
    u128 e = 1;
    for (auto const & g : forms) {
        if (g.b < 0)
            continue;
        e = lcm(e, u128(order_dividing(g, h, fac)));
    }
    return i64(e);
}

bool exponent_divides(Discriminant D, i64 E)
{
    return for_each_reduced(D, [E](Form const & g) {
        /* g and its inverse have the same order */
        if (g.b < 0 || is_identity(g))
            return true;
        return is_identity(power(g, u64(E)));
    });
}

ClassGroupSummary group_structure(Discriminant D, std::vector<Form> const & forms,
                                  i64 order_multiple)
{
    i64 const h = i64(forms.size());
    auto fac = factor(u64(order_multiple));

    std::map<i64, i64> order_count;
    for (auto const & g : forms) {
        if (g.b < 0)
            continue;
        bool paired = g.b != 0 && g.b != g.a && g.a != g.c;
        order_count[order_dividing(g, order_multiple, fac)] += paired ? 2 : 1;
    }

    u128 e = 1;
    for (auto const & [ord, cnt] : order_count)
        e = lcm(e, u128(ord));

    /* per prime: exponents e_i of the cyclic p-factors, largest first */
    std::vector<std::pair<u64, std::vector<unsigned>>> pparts;
    for (auto [p, kmax] : fac) {
        std::vector<unsigned> rank_ge(kmax + 2, 0); /* #{i : e_i >= j} */
        i64 prev_log = 0;
        for (unsigned j = 1; j <= kmax; ++j) {
            i64 pj = 1;
            for (unsigned t = 0; t < j; ++t)
                pj *= i64(p);
            i64 n = 0;
            for (auto const & [ord, cnt] : order_count) {
                /* elements of the p-part killed by p^j */
                if (pj % ord == 0)
                    n += cnt;
            }
            i64 lg = 0;
            for (i64 x = n; x > 1; x /= i64(p))
                ++lg;
            rank_ge[j] = unsigned(lg - prev_log);
            prev_log = lg;
        }
        std::vector<unsigned> exps;
        for (unsigned j = kmax; j >= 1; --j) {
            unsigned exact = rank_ge[j] - rank_ge[j + 1];
            for (unsigned t = 0; t < exact; ++t)
                exps.push_back(j);
        }
        pparts.emplace_back(p, exps);
    }

    std::size_t k = 0;
    for (auto const & pp : pparts)
        k = std::max(k, pp.second.size());
    std::vector<i64> divs(k, 1);
    for (auto const & [p, exps] : pparts) {
        /* largest exponent goes into the largest invariant factor */
        for (std::size_t i = 0; i < exps.size(); ++i)
            for (unsigned t = 0; t < exps[i]; ++t)
                divs[k - 1 - i] *= i64(p);
    }
    return ClassGroupSummary{D, h, i64(e), divs};
}

ClassGroupSummary group_structure(Discriminant D)
{
    std::vector<Form> forms;
    i64 h = 0;
    for_each_reduced(D, [&](Form const & g) {
        ensure_budget(++h);
        forms.push_back(g);
        return true;
    });
    return group_structure(D, forms, h);
}

std::vector<Form> ambiguous_forms(Discriminant D)
{
    std::vector<Form> out;
    for_each_reduced(D, [&](Form const & g) {
        if (g.b == 0 || g.a == g.b || g.a == g.c)
            out.push_back(g);
        return true;
    });
    return out;
}

} // namespace qfexp
