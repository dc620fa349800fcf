#pragma once

// Z-lattices in an imaginary quadratic field K = Q(sqrt(d_K)), up to
// homothety. All arithmetic is exact: field elements are x + y sqrt(d_K)
// with rational x, y, and every lattice is brought to Hermite normal form
// so that each homothety class has one canonical reduced form.

#include <array>
#include <set>
#include <vector>

#include "k3fod/bigfloat.hpp"
#include "k3fod/classgroup.hpp"

namespace k3fod {

/// x + y sqrt(d_K).
struct KElement {
    Rat x;
    Rat y;

    friend bool operator==(const KElement&, const KElement&) = default;

    KElement operator*(const Rat& s) const { return {x * s, y * s}; }
    KElement operator/(const Rat& s) const { return {x / s, y / s}; }

    Complex to_complex(const Int& d_K, Real::prec_t prec) const
    {
        return {Real(x, prec), Real(y, prec) * sqrt(Real(Int(-d_K), prec))};
    }
};

inline KElement mul(const KElement& u, const KElement& v, const Int& d_K)
{
    return {u.x * v.x + Rat(d_K) * u.y * v.y, u.x * v.y + u.y * v.x};
}

class QuadLattice {
public:
    /// Lattice spanned by `gens` inside Q(sqrt(d_K)); the span must have rank two.
    QuadLattice(Int d_K, const std::vector<KElement>& gens) : d_K_(std::move(d_K)) { canonicalize(gens); }

    const Int& d_K() const { return d_K_; }
    const std::array<KElement, 2>& basis() const { return basis_; }
    const Form& canonical_form() const { return canonical_; }

    friend bool operator==(const QuadLattice&, const QuadLattice&) = default;

    /// tau with the lattice homothetic to Z + tau Z, Im tau > 0.
    KElement tau() const { return basis_[1] / basis_[0].x; }

    Int conductor() const
    {
        const Int ratio = discriminant(canonical_).value() / d_K_;
        return isqrt(ratio);
    }

private:
    void canonicalize(const std::vector<KElement>& gens)
    {
        Int den = 1;
        for (const auto& g : gens)
            den = lcm(lcm(den, g.x.get_den()), g.y.get_den());
        std::vector<std::array<Int, 2>> v;
        for (const auto& g : gens)
            v.push_back({Int(Rat(g.x * den)), Int(Rat(g.y * den))});

        // Row (q, r) with r = gcd of the sqrt(d_K)-coordinates.
        Int q = 0, r = 0;
        for (const auto& [x, y] : v) {
            const Bezout e = xgcd(r, y);
            q = e.u * q + e.v * x;
            r = e.g;
        }
        if (r == 0)
            throw Error(Errc::FieldMismatch, "generators span a rank one lattice");
        // What is left lies in Z: p generates it.
        Int p = 0;
        for (const auto& [x, y] : v)
            p = gcd(p, x - (y / r) * q);
        if (p == 0)
            throw Error(Errc::FieldMismatch, "generators span a rank one lattice");
        q = fmod(q, p);

        basis_ = {KElement{Rat(p, den), Rat(0)}, KElement{Rat(q, den), Rat(r, den)}};
        for (auto& e : basis_) {
            e.x.canonicalize();
            e.y.canonicalize();
        }

        // tau = (q + r sqrt(d_K)) / p is a root of (p X - q)^2 - r^2 d_K.
        Int A = p * p, B = -2 * p * q, C = q * q - r * r * d_K_;
        const Int g = gcd(A, B, C);
        canonical_ = reduce(Form(A / g, B / g, C / g));
    }

    Int d_K_;
    std::array<KElement, 2> basis_{};
    Form canonical_{1, 0, 1};
};

inline QuadLattice lattice_from_tau(const Int& d_K, const KElement& tau)
{
    if (tau.y <= 0)
        throw Error(Errc::NotUpperHalfPlane, "tau must have positive imaginary part");
    return QuadLattice(d_K, {KElement{Rat(1), Rat(0)}, tau});
}

/// (-b + sqrt(d)) / (2a) expressed over sqrt(d_K).
inline KElement tau_of_form(const Form& F, const FundamentalData& fd)
{
    const Int two_a = 2 * F.a();
    KElement t{Rat(Int(-F.b()), two_a), Rat(fd.f, two_a)};
    t.x.canonicalize();
    t.y.canonicalize();
    return t;
}

/// The map Xi: F -> homothety class of Z + tau Z with tau = (-b + sqrt(d)) / (2a).
inline QuadLattice lattice_from_form(const Form& F)
{
    const FundamentalData fd = fundamental_data(discriminant(F));
    return lattice_from_tau(fd.d_K, tau_of_form(F, fd));
}

inline void require_same_field(const QuadLattice& a, const QuadLattice& b)
{
    if (a.d_K() != b.d_K())
        throw Error(Errc::FieldMismatch,
                    "lattices live in Q(sqrt(" + a.d_K().get_str() + ")) and Q(sqrt(" + b.d_K().get_str() + "))");
}

inline QuadLattice multiply(const QuadLattice& a, const QuadLattice& b)
{
    require_same_field(a, b);
    std::vector<KElement> gens;
    for (const auto& u : a.basis())
        for (const auto& v : b.basis())
            gens.push_back(mul(u, v, a.d_K()));
    return QuadLattice(a.d_K(), gens);
}

inline Int conductor(const QuadLattice& L) { return L.conductor(); }

inline bool homothety_equal(const QuadLattice& a, const QuadLattice& b)
{
    require_same_field(a, b);
    return a.canonical_form() == b.canonical_form();
}

/// The Shioda-Mitani pair tau1 = (-b + sqrt d)/(2a), tau2 = (b + sqrt d)/2.
struct TauPair {
    Int d;
    Int d_K;
    KElement tau1;
    KElement tau2;

    friend bool operator==(const TauPair&, const TauPair&) = default;
};

inline TauPair sm_factors(const Form& Q)
{
    const Discriminant d = discriminant(Q);
    const FundamentalData fd = fundamental_data(d);
    KElement tau2{Rat(Q.b(), 2), Rat(fd.f, 2)};
    tau2.x.canonicalize();
    tau2.y.canonicalize();
    return {d.value(), fd.d_K, tau_of_form(Q, fd), tau2};
}

/// Lambda1 Lambda2 ~ Z + tau1 Z and f1 f2 = f f'.
inline bool shioda_mitani_check(const QuadLattice& L1, const QuadLattice& L2, const Form& Q)
{
    require_same_field(L1, L2);
    const QuadLattice target = lattice_from_form(Q);
    require_same_field(L1, target);
    const Int f = fundamental_data(discriminant(Q)).f;
    const Int f_prime = fundamental_data(discriminant(primitive_part(Q))).f;
    return homothety_equal(multiply(L1, L2), target) && L1.conductor() * L2.conductor() == f * f_prime;
}

/// Transcendental forms of the Galois conjugates: m * [S^2 Q'] for S in Cl(d'),
/// computed through lattice products.
inline std::vector<Form> galois_orbit_classes(const Form& Q)
{
    const Int m = degree_of_primitivity(Q);
    const Form Qp = primitive_part(Q);
    const QuadLattice base = lattice_from_form(Qp);
    std::set<Form> orbit;
    for (const Form& S : reduced_forms(discriminant(Qp))) {
        const QuadLattice LS = lattice_from_form(S);
        orbit.insert(scale(multiply(multiply(LS, LS), base).canonical_form(), m));
    }
    return {orbit.begin(), orbit.end()};
}

} // namespace k3fod
