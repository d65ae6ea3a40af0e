#include "qfexp/arith.hpp"

#include <algorithm>
#include <limits>

namespace qfexp {

i64 gcd(i64 x, i64 y)
{
    u64 a = x < 0 ? u64(0) - u64(x) : u64(x);
    u64 b = y < 0 ? u64(0) - u64(y) : u64(y);
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return i64(a);
}

u128 gcd(u128 x, u128 y)
{
    while (y) {
        u128 t = x % y;
        x = y;
        y = t;
    }
    return x;
}

u128 lcm(u128 x, u128 y)
{
    if (x == 0 || y == 0)
        return 0;
    return x / gcd(x, y) * y;
}

i128 xgcd(i128 x, i128 y, i128 & u, i128 & v)
{
    i128 r0 = x, r1 = y;
    i128 s0 = 1, s1 = 0;
    i128 t0 = 0, t1 = 1;
    while (r1 != 0) {
        i128 q = r0 / r1;
        i128 tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    u = s0;
    v = t0;
    return r0;
}

i128 floor_div(i128 n, i128 d)
{
    i128 q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0)))
        --q;
    return q;
}

i128 ceil_div(i128 n, i128 d)
{
    return -floor_div(-n, d);
}

u64 isqrt(u64 n)
{
    if (n == 0)
        return 0;
    u64 r = u64(__builtin_sqrtl((long double) n));
    while (u128(r) * r > n)
        --r;
    while (u128(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0)
            return n == p;
    }
    /* deterministic Miller-Rabin for 64-bit inputs */
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto powmod = [n](u64 b, u64 e) {
        u128 r = 1, x = b % n;
        while (e) {
            if (e & 1)
                r = r * x % n;
            x = x * x % n;
            e >>= 1;
        }
        return u64(r);
    };
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        u64 x = powmod(a, d);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = u64(u128(x) * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::vector<PrimePower> factor(u64 n)
{
    std::vector<PrimePower> out;
    auto take = [&](u64 p) {
        unsigned k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        if (k)
            out.push_back({p, k});
    };
    take(2);
    take(3);
    for (u64 p = 5; p <= n / p; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n > 1)
        out.push_back({n, 1});
    return out;
}

std::vector<u64> primes_up_to(u64 n)
{
    std::vector<u64> out;
    if (n < 2)
        return out;
    std::vector<bool> composite(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i)
            composite[j] = true;
    }
    return out;
}

std::vector<u64> divisors(u64 n)
{
    std::vector<u64> out{1};
    for (auto [p, k] : factor(n)) {
        std::size_t sz = out.size();
        u64 pk = 1;
        for (unsigned j = 1; j <= k; ++j) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_squarefree(u64 n)
{
    for (auto const & pp : factor(n))
        if (pp.k > 1)
            return false;
    return true;
}

bool checked_mul(u128 x, u128 y, u128 & out)
{
    if (x != 0 && y > std::numeric_limits<u128>::max() / x)
        return false;
    out = x * y;
    return true;
}

std::string to_string(u128 x)
{
    if (x == 0)
        return "0";
    std::string s;
    while (x) {
        s.push_back(char('0' + int(x % 10)));
        x /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string(i128 x)
{
    if (x < 0)
        return "-" + to_string(u128(-x));
    return to_string(u128(x));
}

} // namespace qfexp
