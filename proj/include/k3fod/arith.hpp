#pragma once

// Elementary integer arithmetic shared by the form, lattice and K3 layers:
// gcds with cofactors, factorization, fundamental discriminants.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace k3fod {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int gcd(const Int& a, const Int& b, const Int& c) { return gcd(gcd(a, b), c); }

inline Int lcm(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// g = u*a + v*b with g = gcd(a, b) >= 0.
struct Bezout {
    Int g, u, v;
};

inline Bezout xgcd(const Int& a, const Int& b)
{
    Bezout r;
    mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Floor division and the matching non-negative remainder.
inline Int fdiv(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int fmod(const Int& a, const Int& b)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

inline Int isqrt(const Int& n)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline bool is_probable_prime(const Int& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

inline int kronecker(const Int& a, const Int& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

namespace detail {

inline Int pollard_rho(const Int& n, std::uint64_t seed)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    std::mt19937_64 rng(seed);
    for (;;) {
        Int c = Int(static_cast<unsigned long>(rng() % 1000003 + 1));
        Int x = Int(static_cast<unsigned long>(rng() % 1000003 + 2)), y = x, g = 1;
        // Brent's cycle detection with batched gcds.
        Int q = 1, ys;
        unsigned long r = 1;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = fmod(y * y + c, n);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(128ul, r - k); ++i) {
                    y = fmod(y * y + c, n);
                    q = fmod(q * abs(x - y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = fmod(ys * ys + c, n);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

inline void factor_into(Int n, std::map<Int, unsigned>& out)
{
    if (n == 1)
        return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n, n.get_ui());
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

/// Prime factorization of |n| (n != 0): trial division to 10^6, then Pollard rho.
inline std::map<Int, unsigned> factor(Int n)
{
    std::map<Int, unsigned> out;
    n = abs(n);
    for (unsigned long p : {2ul, 3ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[Int(p)];
            n /= p;
        }
    }
    for (unsigned long p = 5, step = 2; p <= 1000000ul; p += step, step = 6 - step) {
        if (Int(p) * p > n)
            break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[Int(p)];
            n /= p;
        }
    }
    if (n > 1)
        detail::factor_into(n, out);
    return out;
}

/// Returns (p, r) when |n| = p^r for a prime p, else (0, 0).
inline std::pair<Int, unsigned> prime_power(const Int& n)
{
    auto f = factor(n);
    if (f.size() != 1)
        return {0, 0};
    return *f.begin();
}

/// True for the discriminants of imaginary quadratic fields.
inline bool is_fundamental_discriminant(const Int& d)
{
    if (d >= 0)
        return false;
    const Int r = fmod(d, 4);
    auto squarefree = [](const Int& n) {
        for (const auto& [p, e] : factor(n))
            if (e > 1)
                return false;
        return true;
    };
    if (r == 1)
        return squarefree(d);
    if (r == 0) {
        const Int e = d / 4;
        const Int s = fmod(e, 4);
        return (s == 2 || s == 3) && squarefree(e);
    }
    return false;
}

/// sigma_k(n) = sum of d^k over divisors d of n.
inline Int divisor_sigma(unsigned long n, unsigned long k)
{
    Int s = 0, t;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d)
            continue;
        mpz_ui_pow_ui(t.get_mpz_t(), d, k);
        s += t;
        const unsigned long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), e, k);
            s += t;
        }
    }
    return s;
}

} // namespace k3fod
