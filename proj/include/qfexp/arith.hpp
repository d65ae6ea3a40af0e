#ifndef QFEXP_ARITH_HPP
#define QFEXP_ARITH_HPP

// Small exact-integer helpers shared by the form and conductor code.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qfexp {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/* gcd of absolute values; gcd(0, 0) = 0 */
i64 gcd(i64 x, i64 y);
u128 gcd(u128 x, u128 y);
u128 lcm(u128 x, u128 y);

/* Extended gcd: returns g = gcd(x, y) >= 0 and sets u, v with u*x + v*y = g. */
i128 xgcd(i128 x, i128 y, i128 & u, i128 & v);

/* floor and ceil division for a positive divisor */
i128 floor_div(i128 n, i128 d);
i128 ceil_div(i128 n, i128 d);

/* floor(sqrt(n)) for n >= 0, exact */
u64 isqrt(u64 n);

bool is_prime(u64 n);

struct PrimePower
{
    u64 p;
    unsigned k;
};

/* Trial-division factorization, primes in increasing order. n >= 1. */
std::vector<PrimePower> factor(u64 n);

/* Primes up to n inclusive (Eratosthenes). */
std::vector<u64> primes_up_to(u64 n);

std::vector<u64> divisors(u64 n);

bool is_squarefree(u64 n);

/* Overflow-checked multiplication; returns false on overflow. */
bool checked_mul(u128 x, u128 y, u128 & out);

std::string to_string(u128 x);
std::string to_string(i128 x);

} // namespace qfexp

#endif /* QFEXP_ARITH_HPP */
