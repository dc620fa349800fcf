#pragma once

// Command line front end. `run` is the whole program minus main() so that
// tests can drive it with captured streams.
//
// Exit codes: 0 success, 2 usage or input error, 3 computation error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "k3fod/io.hpp"

namespace k3fod::cli {

using io::json;

inline constexpr const char* schema_version = "1.0";

inline constexpr const char* scan_caveat =
    "completeness beyond the scan bound is not claimed: by Weinberger's theorem at most one further "
    "discriminant with 2-torsion class group can exist, and none if GRH holds";

struct Envelope {
    json command;
    json result;
    std::vector<std::string> warnings;

    json to_json() const
    {
        return json{{"schema_version", schema_version}, {"command", command}, {"result", result}, {"warnings", warnings}};
    }
};

namespace detail {

inline void print_forms(std::ostream& out, const std::vector<Form>& v)
{
    for (const auto& f : v)
        out << "  " << f << "\n";
}

inline std::string complex_text(const Complex& z, int digits)
{
    if (z.im.is_zero())
        return z.re.to_string(digits);
    return z.re.to_string(digits) + (z.im.sign() < 0 ? " - " : " + ") + abs(z.im).to_string(digits) + "*i";
}

inline bool is_usage_error(Errc e)
{
    switch (e) {
    case Errc::ParseError:
    case Errc::NotPositiveDefinite:
    case Errc::NotNegativeDiscriminant:
    case Errc::InvalidDiscriminant:
    case Errc::InconsistentPair:
    case Errc::NotUpperHalfPlane:
        return true;
    default:
        return false;
    }
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Arithmetic of singular K3 surfaces: class groups, genera, field-of-definition bounds and "
                 "Inose pencil equations.",
                 "k3fod"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    bool as_json = false;
    long digits = 128;
    app.add_flag("--json", as_json, "Emit the JSON envelope")->envname("K3FOD_JSON");
    app.add_option("--precision", digits, "Working precision in decimal digits")
        ->envname("K3FOD_PRECISION")
        ->check(CLI::Range(16L, 100000L));

    std::string form_text, disc_text;
    bool kummer = false;
    std::int64_t bound = 10000;
    unsigned threads = 1;

    auto add_form = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--form,-f", form_text, "Form as a,b,c (the Gram matrix is ((2a,b),(b,2c)))");
        if (required)
            o->required();
        return o;
    };
    auto add_disc = [&](CLI::App* sub) {
        return sub->add_option("disc,--disc,-d", disc_text, "Negative discriminant")->allow_extra_args(false);
    };

    auto* classgroup = app.add_subcommand("classgroup", "Reduced forms and cyclic structure of Cl(d)");
    add_disc(classgroup)->required();

    auto* genus = app.add_subcommand("genus", "Genus partition of Cl(d), or the genus of T_X for --form");
    add_disc(genus);
    add_form(genus, false);

    auto* bounds = app.add_subcommand("bounds", "Bounds on the degree of a field of definition");
    add_form(bounds, true);

    auto* factors = app.add_subcommand("factors", "Shioda-Mitani factors tau1, tau2 and their lattices");
    add_form(factors, true);
    factors->add_flag("--kummer", kummer, "Also apply the Kummer reduction (Q must be 2-divisible)");

    auto* equation = app.add_subcommand("equation", "Inose pencil and Kummer Weierstrass equations");
    add_form(equation, true);
    equation->add_flag("--kummer", kummer, "Model X as a Kummer surface (Q must be 2-divisible)");

    auto* classpoly = app.add_subcommand("classpoly", "Ring class polynomial of discriminant d");
    add_disc(classpoly)->required();

    auto* scan = app.add_subcommand("scan", "Discriminants whose class group is 2-torsion");
    scan->add_option("--bound,-b", bound, "Scan |d| <= bound")->envname("K3FOD_BOUND")->check(CLI::Range(
        std::int64_t{4}, std::int64_t{100000000}));
    scan->add_option("--threads,-j", threads, "Worker threads")->envname("K3FOD_THREADS")->check(CLI::Range(1u, 256u));

    // Negative discriminants look like short options; pass them through as values.
    std::vector<std::string> argv;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        const bool negative_number = a.size() > 1 && a[0] == '-' && std::isdigit(static_cast<unsigned char>(a[1]));
        const bool after_value_flag = !argv.empty() && (argv.back() == "--disc" || argv.back() == "-d");
        if (negative_number && !after_value_flag)
            argv.push_back("--disc");
        argv.push_back(a);
    }

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const long bits = bits_for_digits(digits);
    const int show = static_cast<int>(std::min<long>(digits, 40));
    Envelope env;
    std::ostringstream text;

    try {
        if (classgroup->parsed()) {
            const ClassGroup G = enumerate(io::parse_discriminant(disc_text));
            env.command = {{"verb", "classgroup"}, {"d", disc_text}};
            env.result = io::to_json(G);
            text << "Cl(" << G.discriminant() << "), h = " << G.order() << "\n";
            detail::print_forms(text, G.elements());
            text << "structure:";
            for (const auto& c : G.decomposition())
                text << " Z/" << c.order << " <" << c.generator << ">";
            text << "\n";
        } else if (genus->parsed()) {
            if (!form_text.empty()) {
                const Form Q = io::parse_form(form_text);
                const auto g = genus_of_TX(Q);
                const auto orbit = galois_orbit_classes(Q);
                env.command = {{"verb", "genus"}, {"form", Q.str()}};
                env.result = {{"genus", io::forms_json(g)}, {"galois_orbit", io::forms_json(orbit)},
                              {"consistent", g == orbit}};
                if (g != orbit)
                    env.warnings.push_back("genus and Galois orbit disagree");
                text << "genus of T_X for Q = " << Q << " (" << g.size() << " classes)\n";
                detail::print_forms(text, g);
            } else if (!disc_text.empty()) {
                const ClassGroup G = enumerate(io::parse_discriminant(disc_text));
                const GenusPartition P = genus_partition(G);
                env.command = {{"verb", "genus"}, {"d", disc_text}};
                env.result = io::to_json(P);
                json chars = json::array();
                for (const auto& coset : P.cosets) {
                    json v = json::array();
                    for (int c : genus_characters(coset.front()))
                        v.push_back(c);
                    chars.push_back(v);
                }
                env.result["characters"] = chars;
                text << "Cl(" << G.discriminant() << "): " << P.genus_count() << " genera of "
                     << P.classes_per_genus() << " classes\n";
                for (std::size_t i = 0; i < P.cosets.size(); ++i) {
                    text << "genus " << i << ":\n";
                    detail::print_forms(text, P.cosets[i]);
                }
            } else {
                err << "usage error: genus needs a discriminant or --form\n";
                return 2;
            }
        } else if (bounds->parsed()) {
            const Form Q = io::parse_form(form_text);
            const BoundsReport r = analyze(Q, {digits, true});
            env.command = {{"verb", "bounds"}, {"form", Q.str()}, {"precision", digits}};
            env.result = io::to_json(r);
            const auto& s = r.surface;
            text << "Q = " << Q << ": d = " << s.d << ", m = " << s.m << ", d' = " << s.d_prime
                 << ", d_K = " << s.d_K << ", f = " << s.f << ", f' = " << s.f_prime << "\n";
            text << "l = [LK:K]:  " << r.n << " | l | " << r.h_upper << "\n";
            text << "classes per genus n = " << r.n << ", h(d') = " << r.h_prime << "\n";
            text << "2 | [L:Q] forced: " << (r.parity_forced ? "yes" : "no") << "\n";
            text << "minimal field of definition: "
                 << (r.exact_minimal_field ? *r.exact_minimal_field : std::string("not determined")) << "\n";
            text << "model over " << r.model_field << " contained in " << r.model_field_container << "\n";
            text << "  j_n(tau1) = " << detail::complex_text(r.j_tau1->j_normalized, show) << "\n";
            text << "  j_n(tau2) = " << detail::complex_text(r.j_tau2->j_normalized, show) << "\n";
        } else if (factors->parsed()) {
            const Form Q = io::parse_form(form_text);
            const TauPair tp = sm_factors(Q);
            const QuadLattice L1 = lattice_from_tau(tp.d_K, tp.tau1), L2 = lattice_from_tau(tp.d_K, tp.tau2);
            env.command = {{"verb", "factors"}, {"form", Q.str()}, {"kummer", kummer}};
            env.result = {{"tau_pair", io::to_json(tp)},
                          {"lattice1", io::to_json(L1)},
                          {"lattice2", io::to_json(L2)},
                          {"shioda_mitani", shioda_mitani_check(L1, L2, Q)}};
            text << "tau1 = " << io::format_kelement(tp.tau1, tp.d_K) << "\n";
            text << "tau2 = " << io::format_kelement(tp.tau2, tp.d_K) << "\n";
            text << "lattice conductors: " << L1.conductor() << ", " << L2.conductor() << "\n";
            if (kummer) {
                const auto red = kummer_reduction(Q);
                if (!red) {
                    err << "usage error: " << Q << " is not 2-divisible\n";
                    return 2;
                }
                env.result["kummer"] = {{"half_form", io::to_json(red->first)}, {"tau_pair", io::to_json(red->second)}};
                text << "Kummer: Q/2 = " << red->first << ", tau1 = " << io::format_kelement(red->second.tau1, tp.d_K)
                     << ", tau2/2 = " << io::format_kelement(red->second.tau2, tp.d_K) << "\n";
            }
        } else if (equation->parsed()) {
            const Form Q = io::parse_form(form_text);
            env.command = {{"verb", "equation"}, {"form", Q.str()}, {"kummer", kummer}, {"precision", digits}};
            if (kummer) {
                const auto model = kummer_model_of(Q, digits);
                if (!model) {
                    err << "usage error: " << Q << " is not 2-divisible\n";
                    return 2;
                }
                env.result = {{"model", io::to_json(*model)}};
                text << "X = Km(A), A from Q/2:\n  " << model->equation(show) << "\n";
            } else {
                const WeierstrassModel w = inose_pencil(Q, digits);
                const WeierstrassModel k = kummer_equation(Q, digits);
                env.result = {{"inose_pencil", io::to_json(w)}, {"kummer", io::to_json(k)}};
                if (!w.A.exact || !w.B.exact) {
                    const bool real = abs(w.A.value.im).exponent() < -bits / 2 && abs(w.B.value.im).exponent() < -bits / 2;
                    json cert{{"real", real}};
                    if (real) {
                        const AlgebraicCertificate c = certify_real_coefficients(Q);
                        cert["certified"] = c.certified;
                        cert["poly_A_scaled"] = io::coefficients_json(c.poly_A);
                        cert["poly_B_scaled"] = io::coefficients_json(c.poly_B);
                    }
                    env.result["algebraic"] = cert;
                }
                text << "X:     " << w.equation(show) << "\n";
                text << "       " << w.symbolic() << "\n";
                text << "Km(A): " << k.equation(show) << "\n";
                if (w.degenerate_rule_applied)
                    text << "(degenerate case: zero entries of the twist replaced by 1)\n";
            }
        } else if (classpoly->parsed()) {
            const Discriminant d = io::parse_discriminant(disc_text);
            const ClassPolynomial p = class_polynomial(d);
            env.command = {{"verb", "classpoly"}, {"d", disc_text}};
            env.result = io::to_json(p);
            text << "H_" << d << "(x) =";
            for (std::size_t i = p.coefficients.size(); i-- > 0;) {
                const Int& c = p.coefficients[i];
                if (c == 0)
                    continue;
                text << (c < 0 ? " - " : (i + 1 == p.coefficients.size() ? " " : " + "));
                const Int a = abs(c);
                if (a != 1 || i == 0)
                    text << a;
                if (i > 0)
                    text << (a != 1 ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
            }
            text << "\ncertified: " << (p.certified ? "yes" : "no") << " (" << p.precision_bits << " bits)\n";
        } else if (scan->parsed()) {
            const auto records = scan_one_class_per_genus(bound, threads);
            std::vector<Discriminant> ds;
            for (const auto& r : records)
                ds.emplace_back(r.d);
            const auto fields = distinct_fields(ds);
            env.command = {{"verb", "scan"}, {"bound", bound}};
            json recs = json::array();
            for (const auto& r : records)
                recs.push_back(io::to_json(r));
            json fl = json::array();
            for (const auto& f : fields)
                fl.push_back(io::int_json(f));
            env.result = {{"count", records.size()},
                          {"fields", fields.size()},
                          {"largest", records.empty() ? json(nullptr) : io::int_json(records.back().d)},
                          {"discriminants", recs},
                          {"field_discriminants", fl}};
            env.warnings.push_back(scan_caveat);
            text << records.size() << " discriminants with |d| <= " << bound << ", " << fields.size()
                 << " imaginary quadratic fields\n";
            for (const auto& r : records)
                text << "  d = " << r.d << "  h = " << r.h << "  d_K = " << r.d_K << "  f = " << r.f << "\n";
            if (!records.empty())
                text << "largest |d| found: " << abs(records.back().d) << "\n";
            text << "note: " << scan_caveat << "\n";
        }
    } catch (const Error& e) {
        err << (detail::is_usage_error(e.code()) ? "usage error: " : "error: ") << e.what() << "\n";
        return detail::is_usage_error(e.code()) ? 2 : 3;
    }

    if (as_json)
        out << env.to_json().dump(2) << "\n";
    else
        out << text.str();
    return 0;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

} // namespace k3fod::cli
