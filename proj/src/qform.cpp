#include "qfexp/qform.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace qfexp {

namespace {

i64 narrow(i128 x)
{
    if (x > std::numeric_limits<i64>::max() || x < std::numeric_limits<i64>::min())
        throw std::overflow_error("form coefficient exceeds 64 bits");
    return i64(x);
}

i64 mod4(i64 v)
{
    return ((v % 4) + 4) % 4;
}

} // namespace

bool is_valid_discriminant(i64 value)
{
    if (value >= 0 || value == std::numeric_limits<i64>::min())
        return false;
    i64 r = mod4(value);
    return r == 0 || r == 1;
}

Discriminant::Discriminant(i64 value) : value_(value)
{
    if (!is_valid_discriminant(value))
        throw std::domain_error("invalid discriminant " + std::to_string(value)
                                + ": must be negative and 0 or 1 mod 4");
}

bool Discriminant::is_fundamental() const
{
    if (mod4(value_) == 1)
        return is_squarefree(abs());
    i64 m = value_ / 4;
    i64 r = mod4(m);
    return (r == 2 || r == 3) && is_squarefree(u64(-m));
}

bool is_primitive(i64 a, i64 b, i64 c)
{
    return gcd(gcd(a, b), c) == 1;
}

Form make_form(i64 a, i64 b, i64 c)
{
    if (a < 1)
        throw std::domain_error("form coefficient a must be positive");
    if (!is_primitive(a, b, c))
        throw std::domain_error("form must be primitive");
    i128 d = i128(b) * b - 4 * i128(a) * c;
    if (d >= 0)
        throw std::domain_error("form must be positive definite");
    narrow(d);
    return Form{a, b, c};
}

Form form_from_ab(i64 a, i64 b, Discriminant D)
{
    i128 num = i128(b) * b - D.value();
    if (a < 1 || num % (4 * i128(a)) != 0)
        throw std::domain_error("no form [a, b, *] of this discriminant");
    return make_form(a, b, narrow(num / (4 * i128(a))));
}

std::ostream & operator<<(std::ostream & os, Form const & g)
{
    return os << "[" << g.a << "," << g.b << "," << g.c << "]";
}

Discriminant discriminant(Form const & g)
{
    return Discriminant(narrow(i128(g.b) * g.b - 4 * i128(g.a) * g.c));
}

bool is_reduced(Form const & g)
{
    i64 ab = g.b < 0 ? -g.b : g.b;
    if (!(ab <= g.a && g.a <= g.c))
        return false;
    if ((ab == g.a || g.a == g.c) && g.b < 0)
        return false;
    return true;
}

Form reduce(Form const & g)
{
    i128 a = g.a, b = g.b, c = g.c;
    /* translate b into (-a, a] */
    auto normalize = [&] {
        i128 k = ceil_div(b - a, 2 * a);
        if (k != 0) {
            c = (a * k - b) * k + c;
            b -= 2 * a * k;
        }
    };
    normalize();
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize();
    }
    if (a == c && b < 0)
        b = -b;
    return Form{narrow(a), narrow(b), narrow(c)};
}

bool for_each_reduced(Discriminant D, std::function<bool(Form const &)> const & visit)
{
    i64 const d = D.value();
    u64 const a_max = isqrt(D.abs() / 3);
    i64 const b0 = d & 1;
    std::vector<i64> bs;
    for (i64 a = 1; u64(a) <= a_max; ++a) {
        /* N_b = (b^2 - D)/4 and N_{b+2} = N_b + b + 1; track N_b mod a */
        i128 const n0 = (i128(b0) * b0 - d) / 4;
        i64 r = i64(n0 % a);
        i64 step = (b0 + 1) % a;
        bs.clear();
        for (i64 b = b0; b <= a; b += 2) {
            if (r == 0) {
                i64 c = i64(((i128(b) * b - d) / 4) / a);
                if (c >= a && is_primitive(a, b, c))
                    bs.push_back(b);
            }
            r += step;
            if (r >= a)
                r -= a;
            step += 2;
            if (step >= a)
                step -= a;
            if (step >= a)
                step -= a;
        }
        if (bs.empty())
            continue;
        for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
            i64 b = *it;
            if (b == 0 || b == a)
                continue;
            i64 c = i64(((i128(b) * b - d) / 4) / a);
            if (c == a)
                continue;
            if (!visit(Form{a, -b, c}))
                return false;
        }
        for (i64 b : bs) {
            i64 c = i64(((i128(b) * b - d) / 4) / a);
            if (!visit(Form{a, b, c}))
                return false;
        }
    }
    return true;
}

std::vector<Form> enumerate_reduced(Discriminant D)
{
    std::vector<Form> out;
    for_each_reduced(D, [&](Form const & g) {
        out.push_back(g);
        return true;
    });
    return out;
}

i64 class_number(Discriminant D)
{
    i64 h = 0;
    for_each_reduced(D, [&](Form const &) {
        ++h;
        return true;
    });
    return h;
}

int kronecker(i64 n, u64 p)
{
    if (!is_prime(p))
        throw std::domain_error("kronecker: second argument must be prime");
    if (p == 2) {
        if ((n & 1) == 0)
            return 0;
        i64 r = ((n % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    i128 r = n % i128(p);
    if (r < 0)
        r += p;
    if (r == 0)
        return 0;
    /* Euler's criterion */
    u128 acc = 1, x = u128(r);
    u64 e = (p - 1) / 2;
    while (e) {
        if (e & 1)
            acc = acc * x % p;
        x = x * x % p;
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

FactoredDiscriminant factor_discriminant(Discriminant D)
{
    /* |D| = s q^2 with s squarefree */
    u64 s = 1, q = 1;
    for (auto [p, k] : factor(D.abs())) {
        for (unsigned j = 0; j < k / 2; ++j)
            q *= p;
        if (k % 2)
            s *= p;
    }
    i64 d = -i64(s);
    if (mod4(d) == 1)
        return {Discriminant(d), i64(q)};
    return {Discriminant(4 * d), i64(q / 2)};
}

Point cm_point(Form const & g)
{
    long double a = g.a, b = g.b;
    long double disc = 4.0L * a * (long double) g.c - b * b;
    return {double(-b / (2 * a)), double(std::sqrt(disc) / (2 * a))};
}

} // namespace qfexp
