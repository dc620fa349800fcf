#pragma once

// Singular K3 surfaces through their transcendental form Q: the genus of
// T_X, bounds on the degree of a field of definition, and the Inose pencil
// and Kummer Weierstrass models.

#include <optional>
#include <string>
#include <vector>

#include "k3fod/modular.hpp"

namespace k3fod {

/// Arithmetic data attached to an even positive definite form Q.
struct SurfaceClass {
    Form Q{1, 0, 1};
    Form Q_prime{1, 0, 1}; // primitive part
    Int m;            // degree of primitivity
    Int d, d_prime;   // d = m^2 d'
    Int f, f_prime;   // d = f^2 d_K, d' = f'^2 d_K
    Int d_K;

    friend bool operator==(const SurfaceClass&, const SurfaceClass&) = default;
};

inline SurfaceClass surface_class(const Form& Q)
{
    const Form Qp = primitive_part(Q);
    const Discriminant d = discriminant(Q), dp = discriminant(Qp);
    const FundamentalData fd = fundamental_data(d), fdp = fundamental_data(dp);
    return {Q, Qp, degree_of_primitivity(Q), d.value(), dp.value(), fd.f, fdp.f, fd.d_K};
}

/// m-rescaled genus of the primitive part of Q inside Cl(d').
inline std::vector<Form> genus_of_TX(const Form& Q)
{
    const Int m = degree_of_primitivity(Q);
    const Form Qp = primitive_part(Q);
    const GenusPartition P = genus_partition(enumerate(discriminant(Qp)));
    std::vector<Form> out;
    for (const Form& f : P.genus_of(Qp))
        out.push_back(scale(f, m));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Table of (d, m) for which the upper and lower bounds coincide.

/// Row of the table matched by (d, m) itself, if any.
inline std::optional<std::string> lem_bounds_row(const Int& d, const Int& m)
{
    auto odd_prime_power = [](const Int& n, unsigned long mod, const std::vector<unsigned long>& residues)
        -> std::optional<std::string> {
        const auto [p, r] = prime_power(n);
        if (r == 0 || r % 2 == 0)
            return std::nullopt;
        const unsigned long res = fmod(p, Int(mod)).get_ui();
        for (unsigned long x : residues)
            if (res == x)
                return "p=" + p.get_str() + ",r=" + std::to_string(r);
        return std::nullopt;
    };
    if (m == 1) {
        if (d == -4 || d == -8 || d == -16)
            return "d=" + d.get_str();
        if (auto s = odd_prime_power(-d, 4, {3}))
            return "d=-p^r (p=3 mod 4): " + *s;
        if (divides(4, d))
            if (auto s = odd_prime_power(-d / 4, 4, {3}))
                return "d=-4p^r (p=3 mod 4): " + *s;
    } else if (m == 2) {
        if (d == -12 || d == -16)
            return "d=" + d.get_str();
        if (divides(4, d))
            if (auto s = odd_prime_power(-d / 4, 8, {7}))
                return "d=-4p^r (p=7 mod 8): " + *s;
    } else if (m == 3) {
        if (d == -27)
            return "d=-27";
    }
    return std::nullopt;
}

inline void require_consistent_pair(const Int& d, const Int& m)
{
    if (m <= 0 || d >= 0 || !divides(m * m, d))
        throw Error(Errc::InconsistentPair, "(" + d.get_str() + ", " + m.get_str() + ") is not (m^2 d', m)");
    const Int r = fmod(d / (m * m), 4);
    if (r != 0 && r != 1)
        throw Error(Errc::InconsistentPair, d.get_str() + "/" + m.get_str() + "^2 is not a discriminant");
}

/// Matched row for (d, m), or for (d/4, m/2) when m is even.
inline std::optional<std::string> lem_bounds_match(const Int& d, const Int& m)
{
    require_consistent_pair(d, m);
    if (auto row = lem_bounds_row(d, m))
        return "(d,m) row " + *row;
    if (mpz_even_p(m.get_mpz_t()) && divides(4, d))
        if (auto row = lem_bounds_row(d / 4, m / 2))
            return "(d/4,m/2) row " + *row;
    return std::nullopt;
}

inline bool lem_bounds_applies(const Int& d, const Int& m) { return lem_bounds_match(d, m).has_value(); }

// ---------------------------------------------------------------------------

struct BoundsReport {
    SurfaceClass surface;
    std::size_t n = 0;          // classes per genus of d'; n | l = [LK:K]
    std::size_t h_upper = 0;    // h(d); l | h(d) since LK can be taken inside K(j(tau2))
    std::size_t h_prime = 0;    // h(d')
    bool parity_forced = false; // 2 | [L:Q]
    std::optional<std::string> exact_minimal_field;
    std::optional<std::string> table_row;
    std::size_t genus_size = 0;
    std::vector<Form> genus;
    std::string model_field = "Q(j(tau1), j(tau2))";
    std::string model_field_container = "K(j(tau2))";
    std::optional<JValue> j_tau1; // normalized values carried in JValue
    std::optional<JValue> j_tau2;

    friend bool operator==(const BoundsReport&, const BoundsReport&) = default;
};

struct AnalyzeOptions {
    long digits = 128;
    bool numerics = true;
};

inline BoundsReport analyze(const Form& Q, const AnalyzeOptions& opt = {})
{
    BoundsReport r;
    r.surface = surface_class(Q);
    const SurfaceClass& s = r.surface;
    const Discriminant dp(s.d_prime);
    const ClassGroup G(dp);
    const GenusPartition P = genus_partition(G);

    r.n = P.classes_per_genus();
    r.h_prime = G.order();
    r.h_upper = class_number(Discriminant(s.d));
    const Form Qp = reduce(s.Q_prime);
    r.parity_forced = compose(Qp, Qp) != G.identity();
    for (const Form& f : P.genus_of(Qp))
        r.genus.push_back(scale(f, s.m));
    std::sort(r.genus.begin(), r.genus.end());
    r.genus_size = r.genus.size();

    r.table_row = lem_bounds_match(s.d, s.m);
    if (r.table_row)
        r.exact_minimal_field = Qp == G.identity() ? "Q(j(tau1))" : "K(j(tau1))";

    if (opt.numerics) {
        const long bits = bits_for_digits(opt.digits);
        const TauPair tp = sm_factors(Q);
        r.j_tau1 = j_of_tau(tp.tau1, tp.d_K, bits);
        r.j_tau2 = j_of_tau(tp.tau2, tp.d_K, bits);
    }
    return r;
}

// ---------------------------------------------------------------------------

/// When m is even: (Q/2, (tau1, tau2/2)), the abelian surface whose Kummer
/// surface is X.
inline std::optional<std::pair<Form, TauPair>> kummer_reduction(const Form& Q)
{
    if (!mpz_even_p(degree_of_primitivity(Q).get_mpz_t()))
        return std::nullopt;
    const Form half(Q.a() / 2, Q.b() / 2, Q.c() / 2);
    TauPair tp = sm_factors(Q);
    tp.tau2 = tp.tau2 / Rat(2);
    return std::pair{half, tp};
}

/// A coefficient that is exact when it could be recognized as a rational.
struct Coefficient {
    Complex value;
    std::optional<Rat> exact;

    static Coefficient rational(const Rat& q, long bits) { return {Complex(Real(q, bits), Real(bits)), q}; }

    bool is_zero() const { return exact ? *exact == 0 : (value.re.is_zero() && value.im.is_zero()); }

    friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

inline Coefficient operator*(const Coefficient& x, const Coefficient& y)
{
    std::optional<Rat> e;
    if (x.exact && y.exact)
        e = *x.exact * *y.exact;
    return {x.value * y.value, e};
}

inline Coefficient operator*(const Coefficient& x, long k)
{
    std::optional<Rat> e;
    if (x.exact)
        e = *x.exact * k;
    return {x.value * k, e};
}

enum class ModelKind { InosePencil, Kummer };

/// y^2 = x^3 + c4 t^4 x + P t^k (c2 t^(2s) + c1 t^s + c0), with (k, s) = (5, 1)
/// for the Inose pencil and (4, 2) for its Kummer base change.
struct WeierstrassModel {
    ModelKind kind = ModelKind::InosePencil;
    Coefficient A, B;
    bool degenerate_rule_applied = false;
    bool alpha_zero = false;
    bool beta_zero = false;
    Coefficient c4, P, c2, c1, c0;
    long precision_bits = 0;

    friend bool operator==(const WeierstrassModel&, const WeierstrassModel&) = default;

    int t_power() const { return kind == ModelKind::InosePencil ? 5 : 4; }
    int t_step() const { return kind == ModelKind::InosePencil ? 1 : 2; }

    /// Dense coefficient lists of a4(t) and a6(t), lowest degree first.
    std::vector<Complex> a4() const
    {
        std::vector<Complex> v(5, Complex(precision_bits));
        v[4] = c4.value;
        return v;
    }
    std::vector<Complex> a6() const
    {
        const int k = t_power(), s = t_step();
        std::vector<Complex> v(k + 2 * s + 1, Complex(precision_bits));
        v[k] = P.value * c0.value;
        v[k + s] = P.value * c1.value;
        v[k + 2 * s] = P.value * c2.value;
        return v;
    }

    std::string symbolic() const
    {
        const bool k = kind == ModelKind::Kummer;
        const std::string inner_ab = k ? "(B*t^4 - 2*B*t^2 + 1)" : "(B*t^2 - 2*B*t + 1)";
        const std::string inner_1 = k ? "(t^4 + 1)" : "(t^2 + 1)";
        const std::string tp = k ? "t^4" : "t^5";
        if (!alpha_zero && !beta_zero)
            return "y^2 = x^3 - 3*A*B*t^4*x + A*B*" + tp + "*" + inner_ab;
        if (!alpha_zero)
            return "y^2 = x^3 - 3*A*t^4*x + A*" + tp + "*" + inner_1;
        if (!beta_zero)
            return "y^2 = x^3 + B*" + tp + "*" + inner_ab;
        return "y^2 = x^3 + " + tp + "*" + inner_1;
    }

    std::string equation(int digits = 30) const;
};

namespace detail {

inline std::string format_value(const Coefficient& c, int digits)
{
    if (c.exact)
        return c.exact->get_str();
    const auto& z = c.value;
    if (z.im.is_zero())
        return z.re.to_string(digits);
    return "(" + z.re.to_string(digits) + (z.im.sign() < 0 ? " - " : " + ") + abs(z.im).to_string(digits) + "*i)";
}

// Term with sign folded into the separator when the coefficient is an exact rational.
inline std::string signed_term(const Coefficient& c, const std::string& monomial, bool leading, int digits)
{
    std::string sep = leading ? "" : " + ";
    std::string body;
    if (c.exact) {
        Rat v = *c.exact;
        if (v < 0) {
            sep = leading ? "-" : " - ";
            v = -v;
        }
        if (v == 1)
            body = monomial.empty() ? "1" : monomial;
        else
            body = v.get_str() + (monomial.empty() ? "" : "*" + monomial);
    } else {
        body = format_value(c, digits) + (monomial.empty() ? "" : "*" + monomial);
    }
    return sep + body;
}

} // namespace detail

inline std::string WeierstrassModel::equation(int digits) const
{
    std::string out = "y^2 = x^3";
    if (!c4.is_zero())
        out += detail::signed_term(c4, "t^4*x", false, digits);
    const int s = t_step();
    const std::string t1 = s == 1 ? "t" : "t^" + std::to_string(s);
    const std::string t2 = "t^" + std::to_string(2 * s);
    std::string inner;
    bool leading = true;
    for (auto [c, mono] : {std::pair{&c2, t2}, std::pair{&c1, t1}, std::pair{&c0, std::string()}}) {
        if (c->is_zero())
            continue;
        inner += detail::signed_term(*c, mono, leading, digits);
        leading = false;
    }
    const std::string tk = "t^" + std::to_string(t_power());
    out += detail::signed_term(P, tk + "*(" + inner + ")", false, digits);
    return out;
}

namespace detail {

/// j(tau) is 0 or 1728 exactly when tau's lattice class is that of rho or i.
inline bool lattice_is(const KElement& tau, const Int& d_K, const Form& f)
{
    return lattice_from_tau(d_K, tau).canonical_form() == f;
}

inline WeierstrassModel build_model(const TauPair& tp, ModelKind kind, long digits)
{
    const long bits = bits_for_digits(digits);
    WeierstrassModel w;
    w.kind = kind;
    w.precision_bits = bits;

    const Form rho{1, 1, 1}, i_form{1, 0, 1};
    const bool j1_zero = lattice_is(tp.tau1, tp.d_K, rho), j2_zero = lattice_is(tp.tau2, tp.d_K, rho);
    const bool j1_one = lattice_is(tp.tau1, tp.d_K, i_form), j2_one = lattice_is(tp.tau2, tp.d_K, i_form);
    w.alpha_zero = j1_zero || j2_zero;
    w.beta_zero = j1_one || j2_one;
    w.degenerate_rule_applied = w.alpha_zero || w.beta_zero;

    const JValue j1 = j_of_tau(tp.tau1, tp.d_K, bits), j2 = j_of_tau(tp.tau2, tp.d_K, bits);
    // denominators beyond 2^(bits/5) would make any value look rational
    const Int max_den = Int(1) << std::min(64L, bits / 5);
    auto coefficient = [&](Complex v, bool zero) {
        if (zero)
            return Coefficient::rational(0, bits);
        auto q = recognize_rational(v, max_den);
        return Coefficient{std::move(v), q};
    };
    Complex one(1, bits);
    w.A = coefficient(j1.j_normalized * j2.j_normalized, w.alpha_zero);
    w.B = coefficient((one - j1.j_normalized) * (one - j2.j_normalized), w.beta_zero);

    const Coefficient unit = Coefficient::rational(1, bits), zero = Coefficient::rational(0, bits);
    if (!w.alpha_zero && !w.beta_zero) {
        const Coefficient AB = w.A * w.B;
        w.c4 = AB * -3;
        w.P = AB;
        w.c2 = w.B;
        w.c1 = w.B * -2;
        w.c0 = unit;
    } else if (!w.alpha_zero) {
        w.c4 = w.A * -3;
        w.P = w.A;
        w.c2 = unit;
        w.c1 = zero;
        w.c0 = unit;
    } else if (!w.beta_zero) {
        w.c4 = zero;
        w.P = w.B;
        w.c2 = w.B;
        w.c1 = w.B * -2;
        w.c0 = unit;
    } else {
        w.c4 = zero;
        w.P = unit;
        w.c2 = unit;
        w.c1 = zero;
        w.c0 = unit;
    }
    return w;
}

} // namespace detail

/// Inose pencil of the singular K3 surface with transcendental form Q,
/// twisted to have coefficients in Q(j(tau1), j(tau2)).
inline WeierstrassModel inose_pencil(const Form& Q, long digits = 128)
{
    return detail::build_model(sm_factors(Q), ModelKind::InosePencil, digits);
}

/// Kummer surface of E_tau1 x E_tau2: the Inose pencil after t -> t^2.
inline WeierstrassModel kummer_equation(const Form& Q, long digits = 128)
{
    return detail::build_model(sm_factors(Q), ModelKind::Kummer, digits);
}

/// Model of X itself via the Kummer construction, for Q with even m.
inline std::optional<WeierstrassModel> kummer_model_of(const Form& Q, long digits = 128)
{
    auto red = kummer_reduction(Q);
    if (!red)
        return std::nullopt;
    return detail::build_model(red->second, ModelKind::Kummer, digits);
}

/// Monic integer polynomials annihilating 1728^2 A and 1728^2 B, built from
/// the Cl(d)-conjugates (a Lambda1, a Lambda2) of the pair of lattices.
/// Only meaningful when A and B are real; `certified` reports whether the
/// rounding was stable under precision doubling.
struct AlgebraicCertificate {
    std::vector<Int> poly_A;
    std::vector<Int> poly_B;
    bool certified = false;
};

inline AlgebraicCertificate certify_real_coefficients(const Form& Q)
{
    const TauPair tp = sm_factors(Q);
    const QuadLattice L1 = lattice_from_tau(tp.d_K, tp.tau1);
    const QuadLattice L2 = lattice_from_tau(tp.d_K, tp.tau2);
    std::vector<std::pair<Form, Form>> conj;
    double height = 0;
    for (const Form& S : reduced_forms(Discriminant(tp.d))) {
        const QuadLattice LS = lattice_from_form(S);
        const Form f1 = multiply(LS, L1).canonical_form(), f2 = multiply(LS, L2).canonical_form();
        height += M_PI * (std::sqrt(-discriminant(f1).value().get_d()) / f1.a().get_d() +
                          std::sqrt(-discriminant(f2).value().get_d()) / f2.a().get_d()) / M_LN2;
        conj.emplace_back(f1, f2);
    }
    auto polys = [&](long bits) {
        std::vector<Complex> ra, rb;
        const Complex c1728(1728, bits);
        for (const auto& [f1, f2] : conj) {
            const Complex j1 = j_of_form(f1, bits).j_raw, j2 = j_of_form(f2, bits).j_raw;
            ra.push_back(j1 * j2);
            rb.push_back((c1728 - j1) * (c1728 - j2));
        }
        return std::pair{round_coefficients(expand_roots(ra, bits)), round_coefficients(expand_roots(rb, bits))};
    };
    long bits = static_cast<long>(std::ceil(height)) + 64 + 16 * static_cast<long>(conj.size());
    auto prev = polys(bits);
    for (int attempt = 0; attempt < 3; ++attempt) {
        auto cur = polys(2 * bits);
        if (prev.first && prev.second && cur.first && cur.second && *prev.first == *cur.first &&
            *prev.second == *cur.second)
            return {*cur.first, *cur.second, true};
        prev = std::move(cur);
        bits *= 2;
    }
    return {};
}

} // namespace k3fod
