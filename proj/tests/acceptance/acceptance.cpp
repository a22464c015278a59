// One PASS/FAIL line per acceptance criterion, details indented below it.
// Exit status is the number of failed criteria.
//
//   acceptance [--jobs N] [--only K]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flattori/catalog.hpp"
#include "flattori/codes.hpp"
#include "flattori/cones.hpp"
#include "flattori/congruence.hpp"
#include "flattori/minset.hpp"
#include "flattori/modular.hpp"
#include "flattori/reduction.hpp"
#include "flattori/symphony.hpp"
#include "oracles.hpp"

using namespace flattori;
namespace oc = flattori::oracle;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    template <class... T>
    void note(const T&... parts) {
        std::ostringstream s;
        (s << ... << parts);
        notes.push_back(s.str());
    }
};

std::string join(const std::vector<std::size_t>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
    return s.str();
}

bool same_lattice(const LatticeBasis& a, const LatticeBasis& b) {
    RatMat t = inverse(a.matrix()) * b.matrix();
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j)
            if (t(i, j).get_den() != 1) return false;
    Rat d = det(t);
    return d == 1 || d == -1;
}

// 1 and 2 share one run of the covering algorithm.
struct SymphonyRun {
    SymphonyReport report;
    double seconds = 0;
    bool done = false;
};

SymphonyRun& symphony(std::size_t jobs) {
    static SymphonyRun run;
    if (!run.done) {
        SymphonyOptions opt;
        opt.max_iter = 20;
        opt.jobs = jobs;
        auto t0 = Clock::now();
        run.report = run_symphony(opt);
        run.seconds = seconds_since(t0);
        run.done = true;
    }
    return run;
}

Outcome termination(std::size_t jobs) {
    Outcome o;
    auto& run = symphony(jobs);
    const auto& r = run.report;
    std::size_t last = r.iterations.empty() ? 0 : r.iterations.back().iteration;
    o.note("iterations: ", last, ", solo cones: ", r.solos.size(), ", P3 repairs: ", r.p3_repairs, ", jobs: ", jobs,
           ", wall time: ", std::fixed, std::setprecision(1), run.seconds, " s");
    o.require(r.terminated, "active cones reach 0 within 20 iterations");
    o.require(last <= 20, "at most 20 iterations");
    o.require(r.all_diagonal, "every final cone lies in the diagonal");
    double budget = jobs >= 8 ? 3600.0 : 6 * 3600.0;
    o.require(run.seconds <= budget, "runtime budget");
    return o;
}

Outcome trajectory(std::size_t jobs) {
    Outcome o;
    const std::vector<std::size_t> reference = {1, 4, 42, 500, 3311, 11164, 31334, 59970, 34658, 4452, 1284, 702, 18, 0};
    const auto& r = symphony(jobs).report;
    std::vector<std::size_t> active, computed;
    for (const auto& s : r.iterations)
        if (s.iteration >= 1) {
            active.push_back(s.active);
            computed.push_back(s.computed);
        }
    o.note("reference:          ", join(reference));
    o.note("active after i:     ", join(active));
    o.note("computed in step i: ", join(computed));
    for (std::size_t i = 0; i < std::max(reference.size(), computed.size()); ++i) {
        auto at = [](const std::vector<std::size_t>& v, std::size_t k) {
            return k < v.size() ? std::to_string(v[k]) : std::string("-");
        };
        if (at(reference, i) != at(computed, i) || at(reference, i) != at(active, i))
            o.note("  diff i=", i + 1, ": reference ", at(reference, i), ", computed ", at(computed, i), ", active ",
                   at(active, i));
    }
    o.note("total computed: ", r.total_computed, ", total active: ", r.total_active);
    bool head = active.size() >= 3 && active[0] == 1 && active[1] == 4 && active[2] == 42;
    o.require(head, "first three active counts are 1, 4, 42");
    bool head_c = computed.size() >= 3 && computed[0] == 1 && computed[1] == 4 && computed[2] == 42;
    o.require(head_c, "first three computed counts are 1, 4, 42");
    o.require(r.total_computed >= 100000, "at least 10^5 cones computed");
    return o;
}

Form3Vec sym3(int a11, int a22, int a33, int a12, int a13, int a23) {
    return {Rat(a11), Rat(a22), Rat(a33), Rat(a12), Rat(a13), Rat(a23)};
}

Outcome closed_domain_edges() {
    Outcome o;
    // the eleven edge forms as (q11, q22, q33, q12, q13, q23)
    std::vector<Form3Vec> m = {sym3(0, 0, 1, 0, 0, 0),  sym3(0, 2, 2, 0, 0, 1),  sym3(0, 2, 2, 0, 0, -1),
                               sym3(2, 2, 2, 0, 0, 1),  sym3(2, 2, 2, 0, 0, -1), sym3(2, 2, 2, 0, 1, 1),
                               sym3(2, 2, 2, 0, 1, -1), sym3(2, 2, 2, 1, 0, 1),  sym3(2, 2, 2, 1, 0, -1),
                               sym3(2, 2, 2, 1, 1, 0),  sym3(2, 2, 2, 1, 1, 1)};
    std::set<IntRay> expect;
    for (const auto& f : m) expect.insert(primitive(std::vector<Rat>(f.begin(), f.end())));

    const auto& cat = schiemann_catalog();
    auto t0 = Clock::now();
    Cone c = Cone::from_constraints(6, cat.Aset, cat.Bset);
    double s = seconds_since(t0);
    auto e = c.edges();
    std::set<IntRay> got(e.begin(), e.end());
    o.note(got.size(), " edges in ", std::setprecision(3), s, " s");
    o.require(e.size() == 11, "exactly 11 edges");
    o.require(got == expect, "edges equal the listed set");
    o.require(s < 1.0, "under 1 s");
    return o;
}

Outcome min_base_case() {
    Outcome o;
    clear_min_set_cache();
    auto t0 = Clock::now();
    auto m = min_set({Lambda::Full, {}});
    double s = seconds_since(t0);
    o.note("MIN over all primitive vectors: ", m.size(), " element(s) in ", std::setprecision(3), s, " s");
    o.require(m == std::vector<Vec3>{{1, 0, 0}}, "MIN equals {(1,0,0)}");
    o.require(min_set_oracle({Lambda::Full, {}}, 20) == m, "brute-force oracle agrees");
    o.require(s < 1.0, "under 1 s");
    return o;
}

Outcome schiemann_pair() {
    Outcome o;
    auto p = catalog::schiemann4d_pair();
    auto t0 = Clock::now();
    auto c = certify_isospectral(p.first, p.second);
    auto w = integral_equivalence(p.first, p.second);
    double s = seconds_since(t0);
    o.note("verdict ", verdict_name(c.verdict), ", level ", c.level.get_str(), ", cutoff ", c.cutoff.get_str(),
           ", checked to value ", c.checked_to.get_str(), "; equivalence search ", w ? "found a witness" : "exhausted",
           " (", std::setprecision(3), s, " s)");
    o.require(c.verdict == Verdict::Isospectral, "certificate says Isospectral");
    o.require(!w, "forms are not integrally equivalent");
    o.require(s <= 600, "under 10 min");
    return o;
}

// Multiset of coordinate-wise absolute values of T x over x with Gram value <= tmax.
std::map<std::vector<long>, std::uint64_t> absolute_patterns(const QuadraticForm& q, const IntMat& t,
                                                            const Rat& tmax) {
    std::map<std::vector<long>, std::uint64_t> out;
    for (const auto& [x, v] : enumerate_vectors(q, tmax)) {
        std::vector<long> y(4);
        for (std::size_t i = 0; i < 4; ++i) {
            BigInt s = 0;
            for (std::size_t j = 0; j < 4; ++j) s += t(i, j) * x[j];
            y[i] = std::labs(s.get_si());
        }
        ++out[y];
    }
    return out;
}

Outcome conway_sloane_family() {
    Outcome o;
    const Rat cut = 50;
    IntMat tp = catalog::conway_sloane_t(true), tm = catalog::conway_sloane_t(false);
    // codes of T+ Z^4 and T- Z^4 modulo 12
    auto cp = code_of_integer_lattice(LatticeBasis(to_rat(tp)), 12);
    auto cm = code_of_integer_lattice(LatticeBasis(to_rat(tm)), 12);
    bool paired = absolute_pairing(cp, cm).has_value();
    o.note("codes of T+Z^4, T-Z^4 mod 12: ", codewords(cp).size(), " words each, absolute pairing ",
           paired ? "exists" : "missing");
    o.require(paired, "absolute pairing between the codes");

    std::vector<std::array<int, 4>> quads = {{1, 7, 13, 19}};
    std::mt19937 rng(1729);
    std::uniform_int_distribution<int> e(1, 30);
    while (quads.size() < 4) {
        std::array<int, 4> a{e(rng), e(rng), e(rng), e(rng)};
        std::set<int> s(a.begin(), a.end());
        if (s.size() == 4) quads.push_back(a);
    }
    for (const auto& a : quads) {
        auto t0 = Clock::now();
        auto f = catalog::conway_sloane(a[0], a[1], a[2], a[3]);
        auto r1 = representation_numbers(f.first, cut), r2 = representation_numbers(f.second, cut);
        bool direct = compare_spectra(r1, r2).equal;
        auto p1 = absolute_patterns(f.first, tp, cut), p2 = absolute_patterns(f.second, tm, cut);
        bool patterns = p1 == p2;
        // representation numbers recomputed from the absolute patterns
        std::map<Rat, std::uint64_t> from_patterns;
        for (const auto& [y, m] : p1) {
            Rat v = 0;
            for (std::size_t i = 0; i < 4; ++i) v += Rat(a[i] * y[i] * y[i], 12);
            v.canonicalize();
            from_patterns[v] += m;
        }
        bool consistent = std::equal(r1.entries.begin(), r1.entries.end(), from_patterns.begin(), from_patterns.end(),
                                     [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; }) &&
                          r1.entries.size() == from_patterns.size();
        double s = seconds_since(t0);
        std::uint64_t total = 0;
        for (const auto& [v, m] : r1.entries) total += m;
        o.note("(", a[0], ",", a[1], ",", a[2], ",", a[3], "): ", total, " vectors up to 50, direct ",
               direct ? "equal" : "DIFFER", ", absolute patterns ", patterns ? "equal" : "DIFFER", " (",
               std::setprecision(3), s, " s)");
        o.require(direct && patterns && consistent, "representation numbers agree for the quadruple");
        o.require(s <= 300, "under 5 min per quadruple");
    }

    auto ones = catalog::conway_sloane(1, 1, 1, 1);
    auto w = integral_equivalence(ones.first, ones.second);
    bool witness = false;
    if (w) {
        RatMat b = to_rat(*w);
        Rat d = det(b);
        witness = (d == 1 || d == -1) && b.transpose() * ones.first.matrix() * b == ones.second.matrix();
    }
    o.note("(1,1,1,1): ", witness ? "witness found and verified" : "no witness");
    o.require(witness, "(1,1,1,1) is integrally equivalent");
    return o;
}

Outcome six_dim_codes() {
    Outcome o;
    auto t0 = Clock::now();
    auto [c1, c2] = catalog::prop6dim_codes();
    auto [lam, om] = catalog::prop6dim_pair();
    o.require(same_weight_distribution(c1, c2), "equal weight distributions");
    o.require(same_lattice(construction_a(c1), lam), "construction A of C1 is Lambda");
    o.require(same_lattice(construction_a(c2), om), "construction A of C2 is Omega");
    auto cmp = isospectral_up_to(gram(lam), gram(om), 10);
    o.require(cmp.equal, "representation numbers agree to 10");
    auto cong = lattice_congruent(lam, om);
    o.require(!cong.congruent, "Lambda and Omega are not congruent");
    auto pl = shortest_vector_profile(lam, 2), po = shortest_vector_profile(om, 2);
    auto show = [](const VectorProfile& p) {
        std::ostringstream s;
        s << p.count << " vectors, dots {";
        for (std::size_t i = 0; i < p.dots.size(); ++i)
            s << (i ? ", " : "") << p.dots[i].first.get_str() << ":" << p.dots[i].second;
        return s.str() + "}";
    };
    o.note("Lambda at 2: ", show(pl));
    o.note("Omega at 2:  ", show(po));
    bool lam_orth = std::all_of(pl.dots.begin(), pl.dots.end(),
                                [](const auto& d) { return d.first == 0 || d.first == 2 || d.first == -2; });
    bool om_oblique = std::any_of(po.dots.begin(), po.dots.end(),
                                  [](const auto& d) { return d.first != 0 && d.first != 2 && d.first != -2; });
    o.require(pl.count == po.count, "same number of vectors at squared length 2");
    o.require(lam_orth && om_oblique && !(pl == po), "profiles differ: orthogonal in Lambda, oblique pairs in Omega");
    double s = seconds_since(t0);
    o.note(std::setprecision(3), s, " s");
    o.require(s <= 300, "under 5 min");
    return o;
}

// E8 theta coefficients 240 sigma_3(m) at norm 2m.
std::uint64_t e8_count(int norm) {
    if (norm == 0) return 1;
    if (norm % 2) return 0;
    int m = norm / 2;
    std::uint64_t s = 0;
    for (int d = 1; d <= m; ++d)
        if (m % d == 0) s += static_cast<std::uint64_t>(d) * d * d;
    return 240 * s;
}

Outcome milnor_kneser() {
    Outcome o;
    auto t0 = Clock::now();
    const Rat cut = 6;
    auto m = catalog::milnor_pair();
    auto a = theta_coefficients(m.first, cut), b = theta_coefficients(m.second, cut);
    o.require(compare_spectra(a, b).equal, "E8xE8 and E16 agree up to 6");
    for (int n = 0; n <= 6; n += 2) {
        std::uint64_t expect = 0;
        for (int k = 0; k <= n; k += 2) expect += e8_count(k) * e8_count(n - k);
        o.require(a.at(n) == expect, "E8xE8 count at " + std::to_string(n) + " equals the E8 convolution");
    }
    o.note("E8xE8 / E16 counts at 2, 4, 6: ", a.at(2), ", ", a.at(4), ", ", a.at(6));

    auto k = catalog::kneser_pair();
    auto c = theta_coefficients(k.first, cut), d = theta_coefficients(k.second, cut);
    o.require(compare_spectra(c, d).equal, "D12 and E8xD4 agree up to 6");
    o.require(c.at(2) == 264, "264 roots in D12");
    o.note("D12 / E8xD4 counts at 2, 4, 6: ", c.at(2), ", ", c.at(4), ", ", c.at(6));
    double s = seconds_since(t0);
    o.note(std::setprecision(3), s, " s");
    o.require(s <= 1800, "under 30 min");
    return o;
}

Outcome poisson() {
    Outcome o;
    auto t0 = Clock::now();
    std::vector<std::pair<std::string, LatticeBasis>> lattices = {{"Z", oc::diag_basis({1})},
                                                                  {"Z^2", oc::diag_basis({1, 1})}};
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> num(1, 6), den(1, 4), off(-3, 3);
    for (int i = 0; i < 3; ++i) {
        RatMat a(2, 2);
        a(0, 0) = Rat(num(rng), den(rng));
        a(1, 1) = Rat(num(rng), den(rng));
        a(0, 1) = Rat(off(rng), den(rng));
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) a(r, c).canonicalize();
        lattices.emplace_back("[[" + a(0, 0).get_str() + ", " + a(0, 1).get_str() + "], [0, " + a(1, 1).get_str() + "]]",
                              LatticeBasis(a));
    }
    double worst = 0;
    for (const auto& [name, b] : lattices)
        for (double t : {0.5, 1.0, 2.0}) {
            auto r = poisson_check(b, t, std::sqrt(160.0 * t) + 2.0);
            worst = std::max(worst, r.rel_err);
            if (!(r.rel_err < 1e-9)) o.note(name, " at t=", t, ": rel err ", r.rel_err);
            o.require(r.rel_err < 1e-9, name + " relative error below 1e-9");
        }
    double s = seconds_since(t0);
    o.note(lattices.size(), " lattices x 3 times, worst relative error ", std::scientific, std::setprecision(2), worst,
           std::fixed, " (", std::setprecision(3), s, " s)");
    o.require(s < 60, "under 1 min");
    return o;
}

Outcome property_suites() {
    Outcome o;
    auto t0 = Clock::now();

    // cone engine against subset kernels
    {
        std::mt19937 rng(20240611);
        int checked = 0, bad = 0;
        for (int trial = 0; checked < 500; ++trial) {
            std::size_t d = 3 + trial % 4;
            std::size_t m = d + rng() % (13 - d);
            auto cons = oc::random_system(rng, d, m);
            Cone c;
            try {
                c = Cone::from_constraints(d, cons, {});
            } catch (const DomainError&) {
                continue;
            }
            auto e = c.edges();
            if (std::set<IntRay>(e.begin(), e.end()) != oc::subset_kernel_edges(d, cons)) ++bad;
            ++checked;
        }
        o.note("cone systems: ", checked, " checked, ", bad, " mismatches");
        o.require(bad == 0, "cone engine matches the oracle");
    }
    // MIN against brute force
    {
        std::mt19937 rng(17);
        std::uniform_int_distribution<int> lam(1, 3), cnt(0, 6);
        int queries = 0, bad = 0;
        for (; queries < 200; ++queries) {
            MinQuery q{static_cast<Lambda>(lam(rng)), {}};
            int k = cnt(rng);
            for (int i = 0; i < k; ++i) {
                auto m = min_set(q);
                q.removed.push_back(m[rng() % m.size()]);
            }
            if (min_set(q) != min_set_oracle(q, 20)) ++bad;
        }
        o.note("MIN queries: ", queries, " checked, ", bad, " mismatches");
        o.require(bad == 0, "MIN matches the oracle");
    }
    // reduction: uniqueness and class invariance; successive minima on the first 200
    {
        std::mt19937 rng(2024);
        int forms = 0, bad = 0, minima = 0, bad_minima = 0;
        for (; forms < 1000; ++forms) {
            auto q = oc::random_int_form(rng);
            auto r = schiemann_reduce(q);
            auto moved = schiemann_reduce(oc::transform(q, oc::random_unimodular(rng, 3)));
            if (!(r == moved) || !oc::schiemann_by_definition(r) || !is_schiemann_reduced(r)) ++bad;
            if (minima < 200) {
                auto qr = from_form3(r);
                auto box = oc::successive_minima_by_box(qr);
                for (std::size_t i = 0; i < 3; ++i)
                    if (box[i] != r[i]) {
                        ++bad_minima;
                        break;
                    }
                ++minima;
            }
        }
        o.note("reduction: ", forms, " forms, ", bad, " failures; successive minima: ", minima, " forms, ",
               bad_minima, " failures");
        o.require(bad == 0, "reduction is unique and class invariant");
        o.require(bad_minima == 0, "q_ii equals lambda_i on reduced forms");
    }
    // rectangular tori
    {
        std::mt19937 rng(17);
        std::uniform_int_distribution<int> e(1, 4);
        int pairs = 0, bad = 0;
        for (; pairs < 100; ++pairs) {
            std::size_t n = 2 + rng() % 2;
            std::vector<Rat> d1(n), d2;
            for (auto& x : d1) x = e(rng);
            d2 = d1;
            std::shuffle(d2.begin(), d2.end(), rng);
            if (pairs % 2) d2[rng() % n] = e(rng);
            Rat mx = std::max(*std::max_element(d1.begin(), d1.end()), *std::max_element(d2.begin(), d2.end()));
            bool eq = isospectral_up_to(gram(oc::diag_basis(d1)), gram(oc::diag_basis(d2)), mx * mx + 1).equal;
            std::sort(d1.begin(), d1.end());
            std::sort(d2.begin(), d2.end());
            if (eq != (d1 == d2)) ++bad;
        }
        o.note("rectangular tori: ", pairs, " pairs, ", bad, " failures");
        o.require(bad == 0, "sorted-diagonal criterion");
    }
    // planted integral equivalences
    {
        std::mt19937 rng(12);
        int pairs = 0, bad = 0;
        for (; pairs < 500; ++pairs) {
            std::size_t n = 2 + pairs % 3;
            auto q = oc::random_gram_form(rng, n);
            auto p = oc::transform(q, oc::random_unimodular(rng, n));
            auto w = integral_equivalence(q, p);
            bool ok = false;
            if (w) {
                RatMat b = to_rat(*w);
                Rat d = det(b);
                ok = (d == 1 || d == -1) && b.transpose() * q.matrix() * b == p.matrix();
            }
            if (!ok) ++bad;
        }
        o.note("planted equivalences: ", pairs, " pairs, ", bad, " not recovered");
        o.require(bad == 0, "every planted equivalence is recovered");
    }
    double s = seconds_since(t0);
    o.note(std::fixed, std::setprecision(1), s, " s");
    o.require(s <= 1800, "under 30 min");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t jobs = 1;
    int only = 0;
    if (const char* v = std::getenv("TORUS_SYMPHONY_JOBS")) jobs = std::max(1L, std::strtol(v, nullptr, 10));
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string a = argv[i];
        if (a == "--jobs") jobs = std::max(1L, std::strtol(argv[i + 1], nullptr, 10));
        else if (a == "--only") only = std::atoi(argv[i + 1]);
    }

    struct Criterion {
        int id;
        std::string name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all = {
        {1, "symphony terminates with diagonal solo cones", [&] { return termination(jobs); }},
        {2, "cone-count trajectory", [&] { return trajectory(jobs); }},
        {3, "edges of the closed reduced domain", closed_domain_edges},
        {4, "MIN base case", min_base_case},
        {5, "Schiemann 4D pair: certificate and non-equivalence", schiemann_pair},
        {6, "Conway-Sloane family", conway_sloane_family},
        {7, "six-dimensional code pair", six_dim_codes},
        {8, "Milnor and Kneser pairs", milnor_kneser},
        {9, "Poisson summation", poisson},
        {10, "property suites", property_suites},
    };

    int failed = 0;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << "\n";
        for (const auto& n : o.notes) std::cout << "     " << n << "\n";
        std::cout.flush();
        failed += !o.pass;
    }
    return failed;
}
