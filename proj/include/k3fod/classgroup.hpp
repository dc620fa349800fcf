#pragma once

// The form class group Cl(d): enumeration of reduced forms, cyclic
// decomposition, squares subgroup and genera, plus the scan for
// discriminants whose class group is an elementary abelian 2-group.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "k3fod/forms.hpp"

namespace k3fod {

/// d = f^2 d_K with d_K a field discriminant.
struct FundamentalData {
    Int d_K;
    Int f;

    friend bool operator==(const FundamentalData&, const FundamentalData&) = default;
};

inline FundamentalData fundamental_data(const Discriminant& d)
{
    Int square = 1, kernel = 1;
    for (const auto& [p, e] : factor(d.value())) {
        Int pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), e / 2);
        square *= pk;
        if (e % 2)
            kernel *= p;
    }
    // |d| = square^2 * kernel with kernel squarefree.
    Int d_K = -kernel;
    Int f = square;
    if (fmod(d_K, 4) != 1) {
        d_K *= 4;
        f /= 2;
    }
    return {d_K, f};
}

inline bool is_fundamental(const Discriminant& d) { return fundamental_data(d).f == 1; }

/// Reduced primitive forms of discriminant d, ordered by (a, |b|, -b).
inline std::vector<Form> reduced_forms(const Discriminant& d)
{
    std::vector<Form> out;
    const Int& D = d.value();
    const Int bound = -D;
    for (Int a = 1; 3 * a * a <= bound; ++a) {
        const Int four_a = 4 * a;
        // |b| <= a with b = D mod 2; visit |b| ascending, positive sign first.
        for (Int t = mpz_odd_p(D.get_mpz_t()) ? 1 : 0; t <= a; t += 2) {
            const Int num = t * t - D;
            if (!divides(four_a, num))
                continue;
            const Int c = num / four_a;
            if (c < a)
                continue;
            for (int sign : {1, -1}) {
                if (sign < 0 && (t == 0 || t == a || a == c))
                    continue;
                const Int b = sign * t;
                if (gcd(a, b, c) != 1)
                    continue;
                out.emplace_back(a, b, c);
            }
        }
    }
    return out;
}

struct CyclicFactor {
    Form generator;
    Int order;

    friend bool operator==(const CyclicFactor&, const CyclicFactor&) = default;
};

class ClassGroup {
public:
    explicit ClassGroup(const Discriminant& d) : d_(d), elements_(reduced_forms(d))
    {
        for (std::size_t i = 0; i < elements_.size(); ++i)
            index_.emplace(elements_[i], i);
        decompose();
    }

    const Discriminant& discriminant() const { return d_; }
    const std::vector<Form>& elements() const { return elements_; }
    const std::vector<CyclicFactor>& decomposition() const { return factors_; }
    std::size_t order() const { return elements_.size(); }

    friend bool operator==(const ClassGroup& x, const ClassGroup& y)
    {
        return x.d_ == y.d_ && x.elements_ == y.elements_ && x.factors_ == y.factors_;
    }
    const Form& identity() const { return elements_.front(); }

    bool contains(const Form& f) const { return index_.count(f) != 0; }
    std::size_t index_of(const Form& f) const { return index_.at(f); }

    std::size_t element_order(const Form& f) const
    {
        std::size_t k = 1;
        for (Form x = reduce(f); x != identity(); x = compose(x, f))
            ++k;
        return k;
    }

private:
    // Invariant factor decomposition. Each p-primary part is split by the
    // textbook greedy argument: pick an element of maximal order modulo the
    // span found so far and correct it by an element of that span so the
    // new cyclic factor meets the span trivially.
    void decompose()
    {
        const std::size_t h = elements_.size();
        if (h == 1) {
            factors_.push_back({identity(), 1});
            return;
        }
        std::map<std::size_t, unsigned> hf;
        for (const auto& [p, e] : factor(Int(static_cast<unsigned long>(h))))
            hf[p.get_ui()] = e;

        // cyclic p-power factors, per prime, in decreasing order
        std::vector<std::vector<CyclicFactor>> primary;
        for (const auto& [p, e] : hf) {
            std::size_t pe = 1;
            for (unsigned i = 0; i < e; ++i)
                pe *= p;
            // p-part: x^(h/pe) for all x
            std::set<Form> part;
            for (const Form& x : elements_)
                part.insert(power(x, Int(static_cast<unsigned long>(h / pe))));
            primary.push_back(split_p_group(std::vector<Form>(part.begin(), part.end())));
        }

        // Combine the i-th largest factor of every prime into one generator.
        std::size_t rank = 0;
        for (const auto& v : primary)
            rank = std::max(rank, v.size());
        for (std::size_t i = 0; i < rank; ++i) {
            Form g = identity();
            Int n = 1;
            for (const auto& v : primary) {
                if (i < v.size()) {
                    g = compose(g, v[i].generator);
                    n *= v[i].order;
                }
            }
            factors_.push_back({g, n});
        }
        std::reverse(factors_.begin(), factors_.end());
    }

    std::vector<CyclicFactor> split_p_group(const std::vector<Form>& group)
    {
        std::vector<CyclicFactor> out;
        // span: element -> exponent vector over the generators chosen so far
        std::map<Form, std::vector<Int>> span{{identity(), {}}};
        while (span.size() < group.size()) {
            // element of maximal order modulo the span
            const Form* best = nullptr;
            std::size_t best_order = 0;
            for (const Form& x : group) {
                std::size_t k = 1;
                for (Form y = x; !span.count(y); y = compose(y, x))
                    ++k;
                if (k > best_order) {
                    best_order = k;
                    best = &x;
                }
            }
            const Int k(static_cast<unsigned long>(best_order));
            const auto& expo = span.at(power(*best, k));
            Form y = *best;
            for (std::size_t j = 0; j < expo.size(); ++j)
                y = compose(y, power(out[j].generator, -(expo[j] / k)));
            out.push_back({y, k});

            std::map<Form, std::vector<Int>> grown;
            Form yi = identity();
            for (Int i = 0; i < k; ++i, yi = compose(yi, y)) {
                for (const auto& [x, e] : span) {
                    auto v = e;
                    v.resize(out.size(), Int(0));
                    v.back() = i;
                    grown.emplace(compose(x, yi), std::move(v));
                }
            }
            span = std::move(grown);
        }
        return out;
    }

    Discriminant d_;
    std::vector<Form> elements_;
    std::map<Form, std::size_t> index_;
    std::vector<CyclicFactor> factors_;
};

inline ClassGroup enumerate(const Discriminant& d) { return ClassGroup(d); }

inline std::size_t class_number(const Discriminant& d) { return reduced_forms(d).size(); }

inline std::vector<Form> squares_subgroup(const ClassGroup& G)
{
    std::set<Form> sq;
    for (const Form& f : G.elements())
        sq.insert(compose(f, f));
    std::vector<Form> out;
    for (const Form& f : G.elements())
        if (sq.count(f))
            out.push_back(f);
    return out;
}

struct GenusPartition {
    std::vector<std::vector<Form>> cosets; // cosets.front() is the principal genus

    friend bool operator==(const GenusPartition&, const GenusPartition&) = default;

    const std::vector<Form>& principal_genus() const { return cosets.front(); }
    std::size_t genus_count() const { return cosets.size(); }
    std::size_t classes_per_genus() const { return cosets.front().size(); }

    const std::vector<Form>& genus_of(const Form& f) const
    {
        const Form r = reduce(f);
        for (const auto& c : cosets)
            if (std::find(c.begin(), c.end(), r) != c.end())
                return c;
        throw Error(Errc::MismatchedDiscriminant, "form " + r.str() + " is not in this class group");
    }
};

inline GenusPartition genus_partition(const ClassGroup& G)
{
    const std::vector<Form> sq = squares_subgroup(G);
    GenusPartition out;
    std::set<Form> seen;
    for (const Form& f : G.elements()) {
        if (seen.count(f))
            continue;
        std::vector<Form> coset;
        for (const Form& s : sq)
            coset.push_back(compose(f, s));
        std::sort(coset.begin(), coset.end(),
                  [&](const Form& x, const Form& y) { return G.index_of(x) < G.index_of(y); });
        seen.insert(coset.begin(), coset.end());
        out.cosets.push_back(std::move(coset));
    }
    return out;
}

inline std::size_t classes_per_genus(const Discriminant& d) { return squares_subgroup(enumerate(d)).size(); }

inline bool is_two_torsion(const Form& f)
{
    if (!is_reduced(f))
        throw Error(Errc::NotReduced, f.str() + " is not reduced");
    if (!is_primitive(f))
        throw Error(Errc::ImprimitiveInput, f.str() + " is not primitive");
    return f.b() == 0 || f.a() == f.b() || f.a() == f.c();
}

namespace detail {

// Machine-word kernel for the scan: true iff every reduced primitive form
// of discriminant -D satisfies b = 0, a = b or a = c. Only b >= 0 needs to
// be visited since (a, -b, c) is reduced exactly when (a, b, c) is and
// neither is on the boundary.
inline bool all_two_torsion(std::int64_t D)
{
    for (std::int64_t b = D & 1; 3 * b * b <= D; b += 2) {
        const std::int64_t n = (b * b + D) / 4; // = a c
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= n; ++a) {
            if (n % a)
                continue;
            const std::int64_t c = n / a;
            if (b == 0 || a == b || a == c)
                continue;
            if (std::gcd(std::gcd(a, b), c) == 1)
                return false;
        }
    }
    return true;
}

} // namespace detail

inline bool is_one_class_per_genus(const Discriminant& d)
{
    for (const Form& f : reduced_forms(d))
        if (!is_two_torsion(f))
            return false;
    return true;
}

/// One scan hit: h = class number, g = number of genera, n = h / g.
struct ScanRecord {
    Int d;
    std::size_t h = 0;
    std::size_t g = 0;
    std::size_t n = 0;
    Int d_K;
    Int f;

    friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

inline ScanRecord scan_record(const Discriminant& d)
{
    const ClassGroup G = enumerate(d);
    const GenusPartition P = genus_partition(G);
    const FundamentalData fd = fundamental_data(d);
    return {d.value(), G.order(), P.genus_count(), P.classes_per_genus(), fd.d_K, fd.f};
}

/// All d with |d| <= bound whose class group is 2-torsion, sorted by |d|.
/// Deterministic for any thread count.
inline std::vector<ScanRecord> scan_one_class_per_genus(std::int64_t bound, unsigned threads = 1)
{
    threads = std::max(1u, threads);
    std::vector<std::vector<std::int64_t>> hits(threads);
    auto work = [&](unsigned id) {
        for (std::int64_t D = 3 + id; D <= bound; D += threads) {
            if ((D & 3) != 0 && (D & 3) != 3)
                continue;
            if (detail::all_two_torsion(D))
                hits[id].push_back(D);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, t);
    }
    std::vector<std::int64_t> all;
    for (const auto& v : hits)
        all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end());

    std::vector<ScanRecord> out;
    out.reserve(all.size());
    for (std::int64_t D : all)
        out.push_back(scan_record(Discriminant(Int(static_cast<long>(-D)))));
    return out;
}

inline std::set<Int> distinct_fields(const std::vector<Discriminant>& ds)
{
    std::set<Int> out;
    for (const auto& d : ds)
        out.insert(fundamental_data(d).d_K);
    return out;
}

/// Assigned characters of the genus theory of d, evaluated at a value
/// represented by f and coprime to 2d. Order: odd primes p | d ascending,
/// then the 2-adic characters (delta, epsilon or delta*epsilon) as they apply.
inline std::vector<int> genus_characters(const Form& f)
{
    const Discriminant d = discriminant(f);
    const Int D = d.value();
    Int value = 0;
    for (long r = 1; value == 0; ++r) {
        for (long x = -r; x <= r && value == 0; ++x) {
            for (long y : {-r, r}) {
                for (auto [xx, yy] : {std::pair{x, y}, std::pair{y, x}}) {
                    const Int v = f(Int(xx), Int(yy));
                    if (v != 0 && gcd(v, 2 * D) == 1) {
                        value = v;
                        break;
                    }
                }
                if (value != 0)
                    break;
            }
        }
    }
    std::vector<int> out;
    for (const auto& [p, e] : factor(D)) {
        if (p == 2)
            continue;
        out.push_back(kronecker(value, p));
    }
    if (d.is_odd())
        return out;
    const Int n = -D / 4;
    const long v8 = fmod(value, 8).get_si();
    const int delta = (v8 % 4 == 1) ? 1 : -1;
    const int eps = (v8 == 1 || v8 == 7) ? 1 : -1;
    const long n8 = fmod(n, 8).get_si();
    switch (n8) {
    case 1: case 5: out.push_back(delta); break;
    case 2: out.push_back(delta * eps); break;
    case 6: out.push_back(eps); break;
    case 4: out.push_back(delta); break;
    case 0: out.push_back(delta); out.push_back(eps); break;
    default: break; // n = 3 mod 4: odd characters only
    }
    return out;
}

} // namespace k3fod
