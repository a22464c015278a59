#include "flattori/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "flattori/catalog.hpp"
#include "flattori/codes.hpp"
#include "flattori/congruence.hpp"
#include "flattori/json_io.hpp"
#include "flattori/modular.hpp"
#include "flattori/reduction.hpp"
#include "flattori/symphony.hpp"

namespace flattori {

namespace {

using io::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

DomainTag parse_domain(const std::string& s) {
    if (s == "full") return DomainTag::FullInteger;
    if (s == "zstar") return DomainTag::ZStar;
    if (s == "zstar_minus_e1_line") return DomainTag::ZStarMinusE1Line;
    if (s == "zstar_minus_e1e2_plane") return DomainTag::ZStarMinusE1E2Plane;
    if (s == "zstar_minus_union_planes") return DomainTag::ZStarMinusUnionPlanes;
    throw UsageError("unknown domain '" + s + "'");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
}

std::size_t jobs_from_env(std::size_t fallback) {
    const char* v = std::getenv("TORUS_SYMPHONY_JOBS");
    if (!v || !*v) return fallback;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1) throw UsageError("TORUS_SYMPHONY_JOBS must be a positive integer");
    return static_cast<std::size_t>(n);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Flat tori: spectra, reduction, certificates and the ternary covering algorithm", "flattori"};
    app.require_subcommand(1);

    std::string form_path, q1_path, q2_path, basis_path, gens_path, gens2_path, name, stats_path, dump_dir;
    std::string tmax = "10", domain = "full";
    std::int64_t modulus = 0;
    double t = 1.0, radius = 0.0;
    std::size_t max_iter = 20, jobs = 1;
    bool debug = false;

    auto* rep = app.add_subcommand("rep", "representation numbers up to tmax");
    rep->add_option("--form", form_path, "form or basis JSON")->required();
    rep->add_option("--tmax", tmax, "largest value (rational)");
    rep->add_option("--domain", domain, "full, zstar, zstar_minus_e1_line, zstar_minus_e1e2_plane, zstar_minus_union_planes");

    auto* red = app.add_subcommand("reduce", "Schiemann-reduced representative of a ternary form");
    red->add_option("--form", form_path, "form or basis JSON")->required();

    auto* equiv = app.add_subcommand("equiv", "integral equivalence search");
    equiv->add_option("--q1", q1_path)->required();
    equiv->add_option("--q2", q2_path)->required();

    auto* cert = app.add_subcommand("certify", "modular-form isospectrality certificate");
    cert->add_option("--q1", q1_path)->required();
    cert->add_option("--q2", q2_path)->required();

    auto* code = app.add_subcommand("code", "linear codes and Construction A");
    std::string code_action;
    code->add_option("action", code_action, "construction-a, weights or pairing")
        ->required()
        ->check(CLI::IsMember({"construction-a", "weights", "pairing"}));
    code->add_option("--q", modulus, "modulus when the generator file is a bare list");
    code->add_option("--gens", gens_path, "code JSON or generator list")->required();
    code->add_option("--gens2", gens2_path, "second code for weights and pairing");

    auto* cat = app.add_subcommand("catalog", "dump a catalog entry");
    cat->add_option("--name", name, "e.g. schiemann4d_pair, dn(4), conway_sloane(1,7,13,19)")->required();

    auto* poi = app.add_subcommand("poisson", "numeric check of the Poisson summation identity");
    poi->add_option("--basis", basis_path)->required();
    poi->add_option("--t", t)->check(CLI::PositiveNumber);
    poi->add_option("--radius", radius, "truncation radius (default from t)");

    auto* sym = app.add_subcommand("symphony", "covering refinement over pairs of ternary forms");
    sym->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber);
    sym->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    sym->add_option("--stats", stats_path, "per-iteration CSV");
    sym->add_option("--dump", dump_dir, "directory for per-iteration cone JSON");
    sym->add_flag("--debug-assertions", debug, "fail on an in-tune violation instead of repairing it");

    std::vector<std::string> argv_s{"flattori"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_s) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*rep) {
            Rat tm = parse_rat(tmax);
            if (tm <= 0) throw UsageError("--tmax must be positive");
            EnumerationDomain dom;
            dom.tag = parse_domain(domain);
            auto q = io::form_from_json(io::read_json_file(form_path));
            auto s = representation_numbers(q, tm, dom);
            out << json{{"tmax", tm.get_str()}, {"domain", domain}, {"spectrum", io::to_json(s)}}.dump() << "\n";
        } else if (*red) {
            auto v = schiemann_reduce(io::form_from_json(io::read_json_file(form_path)));
            json a = json::array();
            for (const auto& x : v) a.push_back(x.get_str());
            out << a.dump() << "\n";
        } else if (*equiv) {
            auto q1 = io::form_from_json(io::read_json_file(q1_path));
            auto q2 = io::form_from_json(io::read_json_file(q2_path));
            auto w = integral_equivalence(q1, q2);
            json j = {{"equivalent", w.has_value()}};
            if (w) j["witness"] = io::to_json(*w);
            out << j.dump() << "\n";
        } else if (*cert) {
            auto q1 = io::form_from_json(io::read_json_file(q1_path));
            auto q2 = io::form_from_json(io::read_json_file(q2_path));
            out << io::to_json(certify_isospectral(q1, q2)).dump() << "\n";
        } else if (*code) {
            auto c1 = io::code_from_json(io::read_json_file(gens_path), modulus);
            if (code_action == "construction-a") {
                out << io::to_json(construction_a(c1)).dump() << "\n";
            } else {
                if (gens2_path.empty()) throw UsageError(code_action + " needs --gens2");
                auto c2 = io::code_from_json(io::read_json_file(gens2_path), modulus);
                if (code_action == "weights") {
                    out << json{{"same_weight_distribution", same_weight_distribution(c1, c2)}}.dump() << "\n";
                } else {
                    auto p = absolute_pairing(c1, c2);
                    json j = {{"absolute_pairing", p.has_value()}};
                    if (p) {
                        json pairs = json::array();
                        for (const auto& [a, b] : *p) pairs.push_back({a, b});
                        j["pairing"] = pairs;
                    }
                    out << j.dump() << "\n";
                }
            }
        } else if (*cat) {
            out << io::to_json(catalog::get(name)).dump() << "\n";
        } else if (*poi) {
            auto b = io::basis_from_json(io::read_json_file(basis_path));
            if (radius <= 0) radius = std::sqrt(160.0 * t) + 2.0;
            auto r = poisson_check(b, t, radius);
            out << json{{"t", t}, {"radius", radius}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"rel_err", r.rel_err}}.dump()
                << "\n";
        } else if (*sym) {
            SymphonyOptions o;
            o.max_iter = max_iter;
            o.jobs = jobs_from_env(jobs);
            o.refine.strict_p3 = debug;
            if (!dump_dir.empty()) {
                std::filesystem::create_directories(dump_dir);
                o.on_iteration = [&](const IterationStats& s, const std::vector<InTuneCone>& active) {
                    json a = json::array();
                    for (const auto& c : active) a.push_back(io::to_json(c));
                    write_file(dump_dir + "/iteration_" + std::to_string(s.iteration) + ".json", a.dump() + "\n");
                };
            }
            auto r = run_symphony(o);
            if (!stats_path.empty()) write_file(stats_path, stats_csv(r));
            if (!dump_dir.empty()) {
                json a = json::array();
                for (const auto& c : r.solos) a.push_back(io::to_json(c));
                write_file(dump_dir + "/solos.json", a.dump() + "\n");
            }
            json its = json::array();
            for (const auto& s : r.iterations)
                its.push_back({{"iteration", s.iteration},
                               {"active_cones", s.active},
                               {"solo_cones", s.solo},
                               {"computed", s.computed},
                               {"p3_repairs", s.p3_repairs}});
            out << json{{"terminated", r.terminated},
                        {"all_diagonal", r.all_diagonal},
                        {"total_computed", r.total_computed},
                        {"p3_repairs", r.p3_repairs},
                        {"iterations", its}}
                       .dump()
                << "\n";
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "error: invalid JSON input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace flattori
