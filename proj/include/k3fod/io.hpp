#pragma once

// Text and JSON serialization. Big integers are written as decimal strings;
// floating values as decimal strings with enough digits to round-trip at
// their precision.

#include <cmath>
#include <regex>
#include <string>

#include <json.hpp>

#include "k3fod/k3.hpp"

namespace k3fod::io {

using json = nlohmann::ordered_json;

inline Int parse_int(const std::string& s)
{
    static const std::regex re(R"(\s*[+-]?\d+\s*)");
    if (!std::regex_match(s, re))
        throw Error(Errc::ParseError, "not an integer: '" + s + "'");
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '+')
            t += ch;
    return Int(t);
}

/// "a,b,c" or "(a,b,c)" -> validated Form.
inline Form parse_form(const std::string& text)
{
    static const std::regex re(R"(\s*\(?\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw Error(Errc::ParseError, "expected a form as 'a,b,c', got '" + text + "'");
    return Form(parse_int(m[1]), parse_int(m[2]), parse_int(m[3]));
}

inline Discriminant parse_discriminant(const std::string& text) { return Discriminant(parse_int(text)); }

inline std::string format_form(const Form& f) { return f.str(); }

// ---------------------------------------------------------------------------
// scalars

inline json int_json(const Int& z) { return z.get_str(); }

inline Int int_from(const json& j)
{
    if (j.is_string())
        return parse_int(j.get<std::string>());
    if (j.is_number_integer())
        return Int(j.get<long>());
    throw Error(Errc::ParseError, "expected an integer, got " + j.dump());
}

inline int digits_for_bits(long bits) { return static_cast<int>(std::ceil(bits * 0.30102999566398120)) + 2; }

inline json real_json(const Real& x) { return x.to_string(digits_for_bits(x.precision())); }

inline json complex_json(const Complex& z) { return json{{"re", real_json(z.re)}, {"im", real_json(z.im)}}; }

inline Complex complex_from(const json& j, long bits)
{
    return {Real::parse(j.at("re").get<std::string>(), bits), Real::parse(j.at("im").get<std::string>(), bits)};
}

inline json rational_json(const Rat& q) { return q.get_str(); }

inline Rat rational_from(const json& j)
{
    Rat q(j.get<std::string>());
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------
// forms, groups

inline json to_json(const Form& f) { return json{{"a", int_json(f.a())}, {"b", int_json(f.b())}, {"c", int_json(f.c())}}; }

inline Form form_from(const json& j)
{
    try {
        return Form(int_from(j.at("a")), int_from(j.at("b")), int_from(j.at("c")));
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

inline json forms_json(const std::vector<Form>& v)
{
    json a = json::array();
    for (const auto& f : v)
        a.push_back(to_json(f));
    return a;
}

inline std::vector<Form> forms_from(const json& j)
{
    std::vector<Form> out;
    for (const auto& x : j)
        out.push_back(form_from(x));
    return out;
}

inline json to_json(const ClassGroup& G)
{
    json dec = json::array();
    for (const auto& c : G.decomposition())
        dec.push_back(json{{"generator", to_json(c.generator)}, {"order", int_json(c.order)}});
    return json{{"d", int_json(G.discriminant().value())},
                {"h", G.order()},
                {"elements", forms_json(G.elements())},
                {"decomposition", dec}};
}

/// Rebuilds the group from d and checks the payload against it.
inline ClassGroup class_group_from(const json& j)
{
    ClassGroup G(Discriminant(int_from(j.at("d"))));
    if (forms_from(j.at("elements")) != G.elements())
        throw Error(Errc::ParseError, "class group elements do not match discriminant");
    std::vector<CyclicFactor> dec;
    for (const auto& c : j.at("decomposition"))
        dec.push_back({form_from(c.at("generator")), int_from(c.at("order"))});
    if (dec != G.decomposition())
        throw Error(Errc::ParseError, "class group decomposition does not match discriminant");
    return G;
}

inline json to_json(const GenusPartition& P)
{
    json cosets = json::array();
    for (const auto& c : P.cosets)
        cosets.push_back(forms_json(c));
    return json{{"genera", P.genus_count()}, {"classes_per_genus", P.classes_per_genus()}, {"cosets", cosets}};
}

inline GenusPartition genus_partition_from(const json& j)
{
    GenusPartition P;
    for (const auto& c : j.at("cosets"))
        P.cosets.push_back(forms_from(c));
    return P;
}

inline json to_json(const ScanRecord& r)
{
    return json{{"d", int_json(r.d)}, {"h", r.h}, {"g", r.g}, {"n", r.n}, {"d_K", int_json(r.d_K)}, {"f", int_json(r.f)}};
}

inline ScanRecord scan_record_from(const json& j)
{
    return {int_from(j.at("d")), j.at("h").get<std::size_t>(), j.at("g").get<std::size_t>(),
            j.at("n").get<std::size_t>(), int_from(j.at("d_K")), int_from(j.at("f"))};
}

// ---------------------------------------------------------------------------
// lattices

inline json to_json(const KElement& e)
{
    return json::array({int_json(e.x.get_num()), int_json(e.x.get_den()), int_json(e.y.get_num()),
                        int_json(e.y.get_den())});
}

inline KElement kelement_from(const json& j)
{
    KElement e{Rat(int_from(j.at(0)), int_from(j.at(1))), Rat(int_from(j.at(2)), int_from(j.at(3)))};
    e.x.canonicalize();
    e.y.canonicalize();
    return e;
}

inline json to_json(const QuadLattice& L)
{
    return json{{"d_K", int_json(L.d_K())},
                {"basis", json::array({to_json(L.basis()[0]), to_json(L.basis()[1])})},
                {"canonical_form", to_json(L.canonical_form())},
                {"conductor", int_json(L.conductor())}};
}

inline QuadLattice lattice_from(const json& j)
{
    QuadLattice L(int_from(j.at("d_K")), {kelement_from(j.at("basis").at(0)), kelement_from(j.at("basis").at(1))});
    if (j.contains("canonical_form") && form_from(j.at("canonical_form")) != L.canonical_form())
        throw Error(Errc::ParseError, "lattice canonical form does not match its basis");
    return L;
}

inline json to_json(const TauPair& t)
{
    return json{{"d", int_json(t.d)}, {"d_K", int_json(t.d_K)}, {"tau1", to_json(t.tau1)}, {"tau2", to_json(t.tau2)}};
}

inline TauPair tau_pair_from(const json& j)
{
    return {int_from(j.at("d")), int_from(j.at("d_K")), kelement_from(j.at("tau1")), kelement_from(j.at("tau2"))};
}

/// "x + y*i*sqrt(n)" for display, with d_K = -n or -4n and n squarefree.
inline std::string format_kelement(const KElement& e, const Int& d_K)
{
    Int n = -d_K;
    Rat y = e.y;
    if (divides(Int(4), n)) {
        n /= 4;
        y *= 2;
    }
    std::string s;
    if (e.x != 0)
        s = e.x.get_str();
    if (y != 0) {
        if (!s.empty())
            s += y < 0 ? " - " : " + ";
        else if (y < 0)
            s += "-";
        y = abs(y);
        s += (y == 1 ? std::string() : y.get_str() + "*") + "i" + (n == 1 ? std::string() : "*sqrt(" + n.get_str() + ")");
    }
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// modular

inline json to_json(const JValue& v)
{
    return json{{"tau", complex_json(v.tau)},
                {"j_raw", complex_json(v.j_raw)},
                {"j_normalized", complex_json(v.j_normalized)},
                {"precision_bits", v.precision_bits}};
}

inline JValue jvalue_from(const json& j)
{
    const long bits = j.at("precision_bits").get<long>();
    return {complex_from(j.at("tau"), bits + 64), complex_from(j.at("j_raw"), bits),
            complex_from(j.at("j_normalized"), bits), bits};
}

inline json coefficients_json(const std::vector<Int>& c)
{
    json a = json::array();
    for (const auto& z : c)
        a.push_back(int_json(z));
    return a;
}

inline std::vector<Int> coefficients_from(const json& j)
{
    std::vector<Int> out;
    for (const auto& x : j)
        out.push_back(int_from(x));
    return out;
}

inline json to_json(const ClassPolynomial& p)
{
    return json{{"d", int_json(p.d)},
                {"degree", p.degree()},
                {"coefficients", coefficients_json(p.coefficients)},
                {"certified", p.certified},
                {"precision_bits", p.precision_bits}};
}

inline ClassPolynomial class_polynomial_from(const json& j)
{
    return {int_from(j.at("d")), coefficients_from(j.at("coefficients")), j.at("certified").get<bool>(),
            j.at("precision_bits").get<long>()};
}

// ---------------------------------------------------------------------------
// k3

inline json to_json(const SurfaceClass& s)
{
    return json{{"Q", to_json(s.Q)},
                {"Q_prime", to_json(s.Q_prime)},
                {"m", int_json(s.m)},
                {"d", int_json(s.d)},
                {"d_prime", int_json(s.d_prime)},
                {"f", int_json(s.f)},
                {"f_prime", int_json(s.f_prime)},
                {"d_K", int_json(s.d_K)}};
}

inline SurfaceClass surface_class_from(const json& j)
{
    return {form_from(j.at("Q")),     form_from(j.at("Q_prime")), int_from(j.at("m")),
            int_from(j.at("d")),      int_from(j.at("d_prime")), int_from(j.at("f")),
            int_from(j.at("f_prime")), int_from(j.at("d_K"))};
}

inline json optional_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

inline std::optional<std::string> optional_string_from(const json& j)
{
    if (j.is_null())
        return std::nullopt;
    return j.get<std::string>();
}

inline json to_json(const BoundsReport& r)
{
    json constraints = json::array({"n | l", "l | h_upper", "l | [L:Q]"});
    if (r.parity_forced)
        constraints.push_back("2 | [L:Q]");
    json model{{"descriptor", r.model_field}, {"contained_in", r.model_field_container}};
    if (r.j_tau1)
        model["j_tau1"] = to_json(*r.j_tau1);
    if (r.j_tau2)
        model["j_tau2"] = to_json(*r.j_tau2);
    return json{{"surface", to_json(r.surface)},
                {"n", r.n},
                {"h_upper", r.h_upper},
                {"h_prime", r.h_prime},
                {"parity_forced", r.parity_forced},
                {"exact_minimal_field", optional_string(r.exact_minimal_field)},
                {"table_row", optional_string(r.table_row)},
                {"genus_size", r.genus_size},
                {"genus", forms_json(r.genus)},
                {"constraints", constraints},
                {"model_field", model}};
}

inline BoundsReport bounds_report_from(const json& j)
{
    BoundsReport r;
    r.surface = surface_class_from(j.at("surface"));
    r.n = j.at("n").get<std::size_t>();
    r.h_upper = j.at("h_upper").get<std::size_t>();
    r.h_prime = j.at("h_prime").get<std::size_t>();
    r.parity_forced = j.at("parity_forced").get<bool>();
    r.exact_minimal_field = optional_string_from(j.at("exact_minimal_field"));
    r.table_row = optional_string_from(j.at("table_row"));
    r.genus_size = j.at("genus_size").get<std::size_t>();
    r.genus = forms_from(j.at("genus"));
    const auto& model = j.at("model_field");
    r.model_field = model.at("descriptor").get<std::string>();
    r.model_field_container = model.at("contained_in").get<std::string>();
    if (model.contains("j_tau1"))
        r.j_tau1 = jvalue_from(model.at("j_tau1"));
    if (model.contains("j_tau2"))
        r.j_tau2 = jvalue_from(model.at("j_tau2"));
    return r;
}

inline json to_json(const Coefficient& c)
{
    json j = complex_json(c.value);
    j["exact"] = c.exact ? json(rational_json(*c.exact)) : json(nullptr);
    return j;
}

inline Coefficient coefficient_from(const json& j, long bits)
{
    std::optional<Rat> e;
    if (!j.at("exact").is_null())
        e = rational_from(j.at("exact"));
    return {complex_from(j, bits), e};
}

inline json to_json(const WeierstrassModel& w)
{
    return json{{"kind", w.kind == ModelKind::InosePencil ? "InosePencil" : "Kummer"},
                {"A", to_json(w.A)},
                {"B", to_json(w.B)},
                {"degenerate_rule_applied", w.degenerate_rule_applied},
                {"alpha_zero", w.alpha_zero},
                {"beta_zero", w.beta_zero},
                {"coefficients",
                 json{{"c4", to_json(w.c4)}, {"P", to_json(w.P)}, {"c2", to_json(w.c2)}, {"c1", to_json(w.c1)},
                      {"c0", to_json(w.c0)}}},
                {"precision_bits", w.precision_bits},
                {"symbolic", w.symbolic()},
                {"equation", w.equation()}};
}

inline WeierstrassModel weierstrass_from(const json& j)
{
    WeierstrassModel w;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "InosePencil" && kind != "Kummer")
        throw Error(Errc::ParseError, "unknown model kind " + kind);
    w.kind = kind == "Kummer" ? ModelKind::Kummer : ModelKind::InosePencil;
    w.precision_bits = j.at("precision_bits").get<long>();
    const long bits = w.precision_bits;
    w.A = coefficient_from(j.at("A"), bits);
    w.B = coefficient_from(j.at("B"), bits);
    w.degenerate_rule_applied = j.at("degenerate_rule_applied").get<bool>();
    w.alpha_zero = j.at("alpha_zero").get<bool>();
    w.beta_zero = j.at("beta_zero").get<bool>();
    const auto& c = j.at("coefficients");
    w.c4 = coefficient_from(c.at("c4"), bits);
    w.P = coefficient_from(c.at("P"), bits);
    w.c2 = coefficient_from(c.at("c2"), bits);
    w.c1 = coefficient_from(c.at("c1"), bits);
    w.c0 = coefficient_from(c.at("c0"), bits);
    return w;
}

} // namespace k3fod::io
