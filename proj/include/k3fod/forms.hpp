#pragma once

// Even positive definite binary quadratic forms.
//
// A Form (a, b, c) stands for ax^2 + bxy + cy^2, i.e. the even Gram matrix
// ((2a, b), (b, 2c)) of a rank two positive definite lattice. Reduction uses
// Gauss's algorithm; composition is Dirichlet composition in the unified
// form of Shanks, followed by reduction.

#include <compare>
#include <ostream>
#include <sstream>
#include <string>

#include "k3fod/arith.hpp"
#include "k3fod/error.hpp"

namespace k3fod {

/// A negative integer congruent to 0 or 1 mod 4.
class Discriminant {
public:
    explicit Discriminant(Int d) : d_(std::move(d))
    {
        if (d_ >= 0)
            throw Error(Errc::InvalidDiscriminant, "discriminant must be negative, got " + d_.get_str());
        const Int r = fmod(d_, 4);
        if (r != 0 && r != 1)
            throw Error(Errc::InvalidDiscriminant, d_.get_str() + " is not 0 or 1 mod 4");
    }
    explicit Discriminant(long d) : Discriminant(Int(d)) {}

    const Int& value() const { return d_; }
    bool is_odd() const { return mpz_odd_p(d_.get_mpz_t()) != 0; }

    friend bool operator==(const Discriminant&, const Discriminant&) = default;
    friend std::strong_ordering operator<=>(const Discriminant& x, const Discriminant& y)
    {
        const int c = cmp(x.d_, y.d_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const Discriminant& d) { return os << d.d_; }

private:
    Int d_;
};

class Form {
public:
    Form(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c))
    {
        if (a_ <= 0 || c_ <= 0)
            throw Error(Errc::NotPositiveDefinite, "(" + str() + ") has a non-positive outer coefficient");
        if (b_ * b_ - 4 * a_ * c_ >= 0)
            throw Error(Errc::NotNegativeDiscriminant, "(" + str() + ") is not definite");
    }
    Form(long a, long b, long c) : Form(Int(a), Int(b), Int(c)) {}

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }

    /// "a,b,c"
    std::string str() const { return a_.get_str() + "," + b_.get_str() + "," + c_.get_str(); }

    friend bool operator==(const Form&, const Form&) = default;
    friend std::strong_ordering operator<=>(const Form& x, const Form& y)
    {
        int r = cmp(x.a_, y.a_);
        if (r == 0)
            r = cmp(x.b_, y.b_);
        if (r == 0)
            r = cmp(x.c_, y.c_);
        return r < 0 ? std::strong_ordering::less : r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const Form& f) { return os << "(" << f.str() << ")"; }

    /// Value of the form at (x, y).
    Int operator()(const Int& x, const Int& y) const { return a_ * x * x + b_ * x * y + c_ * y * y; }

private:
    Int a_, b_, c_;
};

inline Discriminant discriminant(const Form& f) { return Discriminant(Int(f.b() * f.b() - 4 * f.a() * f.c())); }

inline Int degree_of_primitivity(const Form& f) { return gcd(f.a(), f.b(), f.c()); }

inline bool is_primitive(const Form& f) { return degree_of_primitivity(f) == 1; }

inline Form primitive_part(const Form& f)
{
    const Int m = degree_of_primitivity(f);
    return {f.a() / m, f.b() / m, f.c() / m};
}

inline Form scale(const Form& f, const Int& m) { return {f.a() * m, f.b() * m, f.c() * m}; }

inline bool is_reduced(const Form& f)
{
    if (!(-f.a() < f.b() && f.b() <= f.a() && f.a() <= f.c()))
        return false;
    return f.a() != f.c() || f.b() >= 0;
}

inline Form reduce(const Form& f)
{
    Int a = f.a(), b = f.b(), c = f.c();
    // Translate b into (-a, a]: x -> x - k y with b' = b - 2ka.
    auto normalize = [&] {
        Int k = fdiv(a - b, 2 * a); // b + 2ka lands in (-a, a]
        Int b2 = b + 2 * k * a;
        c = a * k * k + b * k + c;
        b = std::move(b2);
    };
    normalize();
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize();
    }
    if (a == c && b < 0)
        b = -b;
    return {std::move(a), std::move(b), std::move(c)};
}

inline Form identity_form(const Discriminant& d)
{
    const Int& v = d.value();
    if (d.is_odd())
        return {Int(1), Int(1), Int((1 - v) / 4)};
    return {Int(1), Int(0), Int(-v / 4)};
}

inline bool is_identity(const Form& f) { return reduce(f) == identity_form(discriminant(f)); }

inline Form compose(const Form& f1, const Form& f2)
{
    const Discriminant d = discriminant(f1);
    if (discriminant(f2) != d)
        throw Error(Errc::MismatchedDiscriminant,
                    "cannot compose forms of discriminant " + d.value().get_str() + " and " +
                        discriminant(f2).value().get_str());
    if (!is_primitive(f1) || !is_primitive(f2))
        throw Error(Errc::ImprimitiveInput, "composition is defined on primitive forms only");

    const Int& a1 = f1.a();
    const Int& a2 = f2.a();
    const Int& b1 = f1.b();
    const Int& b2 = f2.b();
    const Int s = (b1 + b2) / 2;

    // g = u a1 + v a2 + w s with g = gcd(a1, a2, s).
    const Bezout first = xgcd(a1, a2);
    const Bezout second = xgcd(first.g, s);
    const Int& g = second.g;
    const Int u = second.u * first.u;
    const Int v = second.u * first.v;
    const Int& w = second.v;

    const Int a3 = a1 * a2 / (g * g);
    Int b3 = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + d.value()) / 2) / g;
    b3 = fmod(b3, 2 * a3);
    const Int c3 = (b3 * b3 - d.value()) / (4 * a3);
    return reduce(Form(a3, b3, c3));
}

inline Form inverse(const Form& f)
{
    if (!is_primitive(f))
        throw Error(Errc::ImprimitiveInput, "inverse is defined on primitive forms only");
    return reduce(Form(f.a(), -f.b(), f.c()));
}

inline Form power(const Form& f, Int k)
{
    if (!is_primitive(f))
        throw Error(Errc::ImprimitiveInput, "power is defined on primitive forms only");
    Form base = k < 0 ? inverse(f) : reduce(f);
    k = abs(k);
    Form acc = identity_form(discriminant(f));
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t()))
            acc = compose(acc, base);
        k /= 2;
        if (k > 0)
            base = compose(base, base);
    }
    return acc;
}

inline Form power(const Form& f, long k) { return power(f, Int(k)); }

} // namespace k3fod
