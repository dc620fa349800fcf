#pragma once

// Arbitrary precision real and complex numbers on top of MPFR.
//
// Every Real carries its own precision. Binary operations produce a result
// at the larger of the two operand precisions, so mixing a low precision
// constant into a high precision computation never silently truncates.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace k3fod {

class Real {
public:
    using prec_t = mpfr_prec_t;

    explicit Real(prec_t prec = 64)
    {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_zero(v_, 1);
    }
    Real(long x, prec_t prec) : Real(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x, prec_t prec) : Real(static_cast<long>(x), prec) {}
    Real(double x, prec_t prec) : Real(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const mpz_class& x, prec_t prec) : Real(prec) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    Real(const mpq_class& x, prec_t prec) : Real(prec) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }

    Real(const Real& o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real pi(prec_t prec)
    {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    prec_t precision() const { return mpfr_get_prec(v_); }

    /// Copy rounded to a new precision.
    Real with_precision(prec_t prec) const
    {
        Real r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
    long exponent() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    mpz_class round() const
    {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }
    mpz_class floor() const
    {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }

    /// Scientific notation with `digits` significant digits.
    std::string to_string(int digits) const
    {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    static Real parse(const std::string& text, prec_t prec)
    {
        Real r(prec);
        mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN);
        return r;
    }

    Real operator-() const
    {
        Real r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { return assign(mpfr_add, o); }
    Real& operator-=(const Real& o) { return assign(mpfr_sub, o); }
    Real& operator*=(const Real& o) { return assign(mpfr_mul, o); }
    Real& operator/=(const Real& o) { return assign(mpfr_div, o); }

    Real& operator*=(const mpz_class& z)
    {
        mpfr_mul_z(v_, v_, z.get_mpz_t(), MPFR_RNDN);
        return *this;
    }
    Real& operator*=(long k)
    {
        mpfr_mul_si(v_, v_, k, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(long k)
    {
        mpfr_div_si(v_, v_, k, MPFR_RNDN);
        return *this;
    }
    Real& operator+=(long k)
    {
        mpfr_add_si(v_, v_, k, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(long k)
    {
        mpfr_sub_si(v_, v_, k, MPFR_RNDN);
        return *this;
    }

    friend Real operator+(Real a, const Real& b) { return widen(std::move(a), b) += b; }
    friend Real operator-(Real a, const Real& b) { return widen(std::move(a), b) -= b; }
    friend Real operator*(Real a, const Real& b) { return widen(std::move(a), b) *= b; }
    friend Real operator/(Real a, const Real& b) { return widen(std::move(a), b) /= b; }
    friend Real operator*(Real a, long k) { return a *= k; }
    friend Real operator/(Real a, long k) { return a /= k; }
    friend Real operator+(Real a, long k) { return a += k; }
    friend Real operator-(Real a, long k) { return a -= k; }
    friend Real operator*(Real a, const mpz_class& z) { return a *= z; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    int cmp(long k) const { return mpfr_cmp_si(v_, k); }
    int cmp_abs(const Real& o) const { return mpfr_cmpabs(v_, o.v_); }

    friend Real abs(Real a)
    {
        mpfr_abs(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend Real sqrt(Real a)
    {
        mpfr_sqrt(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend Real exp(Real a)
    {
        mpfr_exp(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend Real log(Real a)
    {
        mpfr_log(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend Real floor(Real a)
    {
        mpfr_floor(a.v_, a.v_);
        return a;
    }
    friend Real nearbyint(Real a)
    {
        mpfr_rint(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    /// sin and cos of the same argument.
    friend std::pair<Real, Real> sin_cos(const Real& a)
    {
        Real s(a.precision()), c(a.precision());
        mpfr_sin_cos(s.v_, c.v_, a.v_, MPFR_RNDN);
        return {std::move(s), std::move(c)};
    }

private:
    static prec_t clamp(prec_t p) { return std::max<prec_t>(p, MPFR_PREC_MIN); }

    template <class F>
    Real& assign(F f, const Real& o)
    {
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_))
            mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
        f(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    static Real widen(Real a, const Real& b)
    {
        if (b.precision() > a.precision())
            mpfr_prec_round(a.v_, b.precision(), MPFR_RNDN);
        return a;
    }

    mpfr_t v_;
};

struct Complex {
    Real re;
    Real im;

    explicit Complex(Real::prec_t prec = 64) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r, Real::prec_t prec) : re(r, prec), im(prec) {}
    Complex(int r, Real::prec_t prec) : re(r, prec), im(prec) {}

    Real::prec_t precision() const { return std::max(re.precision(), im.precision()); }

    Complex with_precision(Real::prec_t p) const { return {re.with_precision(p), im.with_precision(p)}; }

    Complex conj() const { return {re, -im}; }
    Real norm() const { return re * re + im * im; }

    friend Real abs(const Complex& z) { return sqrt(z.norm()); }

    Complex operator-() const { return {-re, -im}; }

    Complex& operator+=(const Complex& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o)
    {
        Real r = re * o.re - im * o.im;
        Real i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Complex& operator/=(const Complex& o)
    {
        Real den = o.norm();
        Real r = (re * o.re + im * o.im) / den;
        Real i = (im * o.re - re * o.im) / den;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Complex& operator*=(const Real& s)
    {
        re *= s;
        im *= s;
        return *this;
    }
    Complex& operator*=(const mpz_class& s)
    {
        re *= s;
        im *= s;
        return *this;
    }
    Complex& operator*=(long s)
    {
        re *= s;
        im *= s;
        return *this;
    }
    Complex& operator/=(long s)
    {
        re /= s;
        im /= s;
        return *this;
    }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const Real& s) { return a *= s; }
    friend Complex operator*(Complex a, long s) { return a *= s; }
    friend Complex operator*(Complex a, const mpz_class& s) { return a *= s; }
    friend Complex operator/(Complex a, long s) { return a /= s; }
};

/// exp(2*pi*i*z) computed as e^{-2 pi Im z} (cos 2 pi Re z + i sin 2 pi Re z).
inline Complex exp_2pi_i(const Complex& z)
{
    const auto prec = z.precision();
    Real two_pi = Real::pi(prec) * 2;
    Real modulus = exp(-(two_pi * z.im));
    auto [s, c] = sin_cos(two_pi * z.re);
    return {modulus * c, modulus * s};
}

/// Bits needed to carry `digits` decimal digits.
inline Real::prec_t bits_for_digits(long digits)
{
    return static_cast<Real::prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 1;
}

} // namespace k3fod
