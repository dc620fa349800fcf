#pragma once

// The modular j-invariant to arbitrary precision, ring class polynomials
// with certified rounding, and recognition of rationals from numerics.
//
// j = 1728 E4^3 / (E4^3 - E6^2) with the Eisenstein series summed as
// q-expansions after moving tau into the standard fundamental domain, where
// |q| <= exp(-pi sqrt 3) < 0.0044.
//
// Two normalizations are carried: j_raw, with j_raw(i) = 1728 (integral at
// CM points, used for class polynomials), and j_normalized = j_raw / 1728,
// with j_normalized(i) = 1 (used by the Inose pencil).

#include <cmath>
#include <optional>
#include <thread>
#include <vector>

#include "k3fod/bigfloat.hpp"
#include "k3fod/lattices.hpp"

namespace k3fod {

struct JValue {
    Complex tau;          // the fundamental-domain representative actually evaluated
    Complex j_raw;
    Complex j_normalized;
    long precision_bits = 0;

    friend bool operator==(const JValue&, const JValue&) = default;
};

namespace detail {

// Eisenstein-series evaluation for tau already in the fundamental domain.
inline Complex j_reduced(const Complex& tau, long bits)
{
    const double y = tau.im.to_double();
    const double log2_q = -2 * M_PI * y / M_LN2;
    // E4^3 - E6^2 = 1728 q + ... cancels about -log2|q| leading bits.
    const long lost = static_cast<long>(std::ceil(-log2_q));
    long work = bits + lost + 40;

    // Tail of sum sigma_k(n) q^n, k <= 5: sigma_5(n) < 1.04 n^5 and the term
    // ratio stays below 1/2, so the tail is at most twice its first term.
    long N = 1;
    while (std::log2(2 * 504 * 1.04) + 5 * std::log2(static_cast<double>(N + 1)) + (N + 1) * log2_q > -work)
        ++N;
    work += static_cast<long>(std::ceil(std::log2(static_cast<double>(N + 1))));

    const Complex t = tau.with_precision(work);
    const Complex q = exp_2pi_i(t);
    Complex qn = q;
    Complex s3(work), s5(work);
    for (long n = 1; n <= N; ++n) {
        s3 += qn * divisor_sigma(static_cast<unsigned long>(n), 3);
        s5 += qn * divisor_sigma(static_cast<unsigned long>(n), 5);
        if (n < N)
            qn *= q;
    }
    Complex e4 = s3 * 240L;
    e4.re += 1;
    Complex e6 = s5 * -504L;
    e6.re += 1;
    const Complex e4_cubed = e4 * e4 * e4;
    const Complex j = e4_cubed * 1728L / (e4_cubed - e6 * e6);
    return j.with_precision(bits);
}

} // namespace detail

/// Move tau into |Re tau| <= 1/2, |tau| >= 1 by translations and inversions.
inline Complex reduce_to_fundamental_domain(Complex tau)
{
    if (tau.im.sign() <= 0)
        throw Error(Errc::NotUpperHalfPlane, "tau must have positive imaginary part");
    for (int iter = 0; iter < 10000; ++iter) {
        tau.re -= nearbyint(tau.re);
        const Real n = tau.norm();
        if (n.cmp(1) >= 0)
            return tau;
        // -1/tau = -conj(tau) / |tau|^2
        tau = Complex(-(tau.re / n), tau.im / n);
    }
    return tau;
}

inline JValue make_jvalue(Complex tau, long bits)
{
    Complex j = detail::j_reduced(tau, bits);
    Complex jn = j / 1728L;
    return {std::move(tau), std::move(j), std::move(jn), bits};
}

/// j at a numeric point of the upper half plane.
inline JValue j_of_tau(const Complex& tau, long bits)
{
    return make_jvalue(reduce_to_fundamental_domain(tau.with_precision(bits + 64)), bits);
}

/// j at the root (-b + sqrt d)/(2a) of a form; the reduction is exact.
inline JValue j_of_form(const Form& F, long bits)
{
    const Form r = reduce(primitive_part(F));
    const FundamentalData fd = fundamental_data(discriminant(r));
    return make_jvalue(tau_of_form(r, fd).to_complex(fd.d_K, bits + 64), bits);
}

/// j at an exact point of Q(sqrt(d_K)), reduced through its lattice class.
inline JValue j_of_tau(const KElement& tau, const Int& d_K, long bits)
{
    return j_of_form(lattice_from_tau(d_K, tau).canonical_form(), bits);
}

/// p/q with q <= max_den, |z - p/q| < 2^(-prec/2) and |Im z| below the same bound.
inline std::optional<Rat> recognize_rational(const Complex& z, const Int& max_den)
{
    const auto prec = z.precision();
    const Real tol = exp(Real(-static_cast<long>(prec / 2), prec) * log(Real(2, prec)));
    if (abs(z.im) >= tol)
        return std::nullopt;
    const Real& target = z.re;
    Real x = target;
    Int h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    for (;;) {
        const Int a = x.floor();
        const Int h = a * h1 + h2, k = a * k1 + k2;
        if (k > max_den)
            return std::nullopt;
        const Rat cand(h, k);
        if (abs(target - Real(cand, prec)) < tol)
            return cand;
        Real frac = x - Real(a, prec);
        if (frac.is_zero())
            return std::nullopt;
        x = Real(1, prec) / frac;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
    }
}

struct ClassPolynomial {
    Int d;
    std::vector<Int> coefficients; // constant term first, monic
    bool certified = false;
    long precision_bits = 0;

    std::size_t degree() const { return coefficients.size() - 1; }
    friend bool operator==(const ClassPolynomial&, const ClassPolynomial&) = default;
};

/// Bits for the class polynomial of d: pi sqrt|d| sum 1/a over log 2, plus 64 guard bits.
inline long class_polynomial_bits(const Discriminant& d)
{
    double s = 0;
    for (const Form& f : reduced_forms(d))
        s += 1.0 / f.a().get_d();
    return static_cast<long>(std::ceil(M_PI * std::sqrt(-d.value().get_d()) * s / M_LN2)) + 64;
}

/// Coefficients of prod (x - r), constant term first.
inline std::vector<Complex> expand_roots(const std::vector<Complex>& roots, long bits)
{
    std::vector<Complex> p{Complex(1, bits)};
    for (const Complex& r : roots) {
        p.insert(p.begin(), Complex(bits));
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            p[i] -= r * p[i + 1];
    }
    return p;
}

/// Integer rounding of complex coefficients; empty when some coefficient
/// is not within 0.01 of an integer.
inline std::optional<std::vector<Int>> round_coefficients(const std::vector<Complex>& coeffs)
{
    std::vector<Int> out;
    for (const Complex& c : coeffs) {
        const auto prec = c.precision();
        const Real tol(0.01, prec);
        const Int z = c.re.round();
        if (abs(c.re - Real(z, prec)) >= tol || abs(c.im) >= tol)
            return std::nullopt;
        out.push_back(z);
    }
    return out;
}

inline std::vector<Complex> class_roots(const Discriminant& d, long bits, unsigned threads = 1)
{
    const std::vector<Form> forms = reduced_forms(d);
    std::vector<Complex> roots(forms.size(), Complex(bits));
    auto eval = [&](std::size_t i) { roots[i] = j_of_form(forms[i], bits).j_raw; };
    if (threads <= 1 || forms.size() < 2) {
        for (std::size_t i = 0; i < forms.size(); ++i)
            eval(i);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < forms.size(); i += threads)
                    eval(i);
            });
    }
    return roots;
}

/// prod over Cl(d) of (x - j_raw(tau_F)). Certified when the rounding at
/// two successive precisions agrees; up to three doublings are tried.
inline ClassPolynomial class_polynomial(const Discriminant& d, unsigned threads = 1)
{
    long bits = class_polynomial_bits(d);
    std::optional<std::vector<Int>> previous =
        round_coefficients(expand_roots(class_roots(d, bits, threads), bits));
    for (int attempt = 0; attempt < 4; ++attempt) {
        const long next = 2 * bits;
        auto current = round_coefficients(expand_roots(class_roots(d, next, threads), next));
        if (previous && current && *previous == *current)
            return {d.value(), std::move(*current), true, bits};
        previous = std::move(current);
        bits = next;
    }
    throw Error(Errc::PrecisionExhausted, "class polynomial of " + d.value().get_str() + " did not stabilize");
}

inline std::size_t ring_class_degree(const Discriminant& d) { return class_number(d); }

} // namespace k3fod
