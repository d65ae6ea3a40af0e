#include "qfexp/conductor.hpp"

#include "qfexp/classgroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace qfexp {

int unit_count(Discriminant d0)
{
    if (!d0.is_fundamental())
        throw std::domain_error("unit_count: discriminant is not fundamental");
    if (d0.value() == -3)
        return 6;
    if (d0.value() == -4)
        return 4;
    return 2;
}

u128 L_prime_power(Discriminant d0, u64 p, unsigned k)
{
    u128 pk1 = 1;
    for (unsigned j = 1; j < k; ++j)
        if (!checked_mul(pk1, p, pk1))
            throw std::overflow_error("L_prime_power overflow");
    u128 out;
    if (!checked_mul(pk1, u128(i128(p) - kronecker(d0.value(), p)), out))
        throw std::overflow_error("L_prime_power overflow");
    return out;
}

u128 L_of(Discriminant d0, u64 f)
{
    if (f < 1)
        throw std::invalid_argument("L_of: conductor must be >= 1");
    u128 L = 1;
    for (auto [p, k] : factor(f))
        L = lcm(L, L_prime_power(d0, p, k));
    return L;
}

i64 lemma_5_1_bound(Discriminant d0, i64 E)
{
    if (E < 1)
        throw std::invalid_argument("lemma_5_1_bound: E must be >= 1");
    return 12 * unit_count(d0) * E;
}

bool check_lemma_5_1(Discriminant D)
{
    auto [d0, f] = factor_discriminant(D);
    u128 L = L_of(d0, u64(f));
    u128 bound = u128(12 * unit_count(d0)) * u128(exponent(D));
    return bound % L == 0;
}

std::vector<PrimePower> theta_factors(Discriminant d0, u64 m)
{
    if (m < 1)
        throw std::invalid_argument("theta: m must be >= 1");
    std::vector<PrimePower> out;
    /* L(p) is p - 1, p or p + 1 and must divide m, so p <= m + 1 is one of d - 1, d, d + 1 for d | m */
    std::vector<u64> primes;
    for (u64 d : divisors(m))
        for (u64 p : {d - 1, d, d + 1})
            if (p >= 2 && is_prime(p))
                primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (u64 p : primes) {
        unsigned k = 0;
        /* L(p^(k+1)) = p L(p^k) for k >= 1, so the loop terminates */
        while (true) {
            u128 L = L_prime_power(d0, p, k + 1);
            if (L > m || m % u64(L) != 0)
                break;
            ++k;
        }
        if (k)
            out.push_back({p, k});
    }
    return out;
}

Conductor theta(Discriminant d0, u64 m)
{
    Conductor t = 1;
    for (auto [p, k] : theta_factors(d0, m))
        for (unsigned j = 0; j < k; ++j)
            if (!checked_mul(t, p, t))
                throw std::overflow_error("theta exceeds 128 bits");
    return t;
}

namespace {

struct Divisor
{
    Conductor f;
    u128 L;
};

std::vector<Divisor> divisors_with_L(Discriminant d0, std::vector<PrimePower> const & fac)
{
    std::vector<Divisor> out{{1, 1}};
    for (auto [p, kmax] : fac) {
        std::size_t sz = out.size();
        Conductor pk = 1;
        for (unsigned k = 1; k <= kmax; ++k) {
            pk *= p;
            u128 Lpk = L_prime_power(d0, p, k);
            for (std::size_t i = 0; i < sz; ++i)
                out.push_back({out[i].f * pk, lcm(out[i].L, Lpk)});
        }
    }
    std::sort(out.begin(), out.end(), [](Divisor const & x, Divisor const & y) { return x.f < y.f; });
    return out;
}

} // namespace

std::vector<ConductorCandidate> candidate_details(Discriminant d0, i64 E)
{
    i64 const bound = lemma_5_1_bound(d0, E);
    /* theta is monotone under divisibility, so the divisors of theta(m) over
       all m | bound are exactly the divisors of theta(bound) */
    std::vector<ConductorCandidate> out;
    for (auto const & d : divisors_with_L(d0, theta_factors(d0, u64(bound)))) {
        if (u128(bound) % d.L == 0)
            out.push_back({d0, d.f, d.L, bound});
    }
    return out;
}

std::vector<Conductor> candidate_conductors(Discriminant d0, i64 E)
{
    std::vector<Conductor> out;
    for (auto const & c : candidate_details(d0, E))
        out.push_back(c.f);
    return out;
}

i64 order_class_number(Discriminant d0, i64 f)
{
    if (f < 1)
        throw std::invalid_argument("order_class_number: conductor must be >= 1");
    i64 const w = unit_count(d0);
    i128 h = class_number(d0);
    if (f == 1)
        return i64(h);
    /* h(d0 f^2) = h(d0) f prod_{p | f} (1 - (d0/p)/p) / [O_d0^x : O^x] */
    i128 num = h * f;
    for (auto [p, k] : factor(u64(f)))
        num = num / i128(p) * (i128(p) - kronecker(d0.value(), p));
    return i64(num / (w / 2));
}

} // namespace qfexp
