#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flattori/catalog.hpp"
#include "flattori/codes.hpp"
#include "flattori/congruence.hpp"
#include "flattori/json_io.hpp"
#include "flattori/minset.hpp"
#include "flattori/modular.hpp"
#include "flattori/reduction.hpp"
#include "flattori/symphony.hpp"

namespace py = pybind11;
using namespace flattori;
using io::json;

namespace {

// Matrices and forms cross the boundary as JSON text in the CLI encoding.
QuadraticForm form(const std::string& s) { return io::form_from_json(json::parse(s)); }
LatticeBasis basis(const std::string& s) { return io::basis_from_json(json::parse(s)); }

DomainTag domain_tag(const std::string& s) {
    if (s == "full") return DomainTag::FullInteger;
    if (s == "zstar") return DomainTag::ZStar;
    if (s == "zstar_minus_e1_line") return DomainTag::ZStarMinusE1Line;
    if (s == "zstar_minus_e1e2_plane") return DomainTag::ZStarMinusE1E2Plane;
    if (s == "zstar_minus_union_planes") return DomainTag::ZStarMinusUnionPlanes;
    throw py::value_error("unknown domain '" + s + "'");
}

LinearCode code(std::int64_t q, const std::vector<Codeword>& gens) {
    if (gens.empty()) throw py::value_error("empty generator list");
    return LinearCode(q, gens.front().size(), gens);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact arithmetic core of flattori";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("representation_numbers", [](const std::string& q, const std::string& tmax, const std::string& domain) {
        EnumerationDomain d;
        d.tag = domain_tag(domain);
        auto s = representation_numbers(form(q), parse_rat(tmax), d);
        return io::to_json(s).dump();
    }, py::arg("form"), py::arg("tmax"), py::arg("domain") = "full");

    m.def("is_minkowski_reduced", [](const std::string& q) { return is_minkowski_reduced(form(q)); });

    m.def("successive_minima", [](const std::string& q) {
        json a = json::array();
        for (const auto& [v, x] : successive_minima(form(q))) {
            json xs = json::array();
            for (const auto& c : x) xs.push_back(c.get_str());
            a.push_back({io::to_json(v), xs});
        }
        return a.dump();
    });

    m.def("schiemann_reduce", [](const std::string& q) {
        json a = json::array();
        for (const auto& v : schiemann_reduce(form(q))) a.push_back(io::to_json(v));
        return a.dump();
    });

    m.def("integral_equivalence", [](const std::string& q1, const std::string& q2) -> std::optional<std::string> {
        auto w = integral_equivalence(form(q1), form(q2));
        if (!w) return std::nullopt;
        return io::to_json(*w).dump();
    });

    m.def("lattice_congruent", [](const std::string& a1, const std::string& a2) {
        return lattice_congruent(basis(a1), basis(a2)).congruent;
    });

    m.def("certify_isospectral", [](const std::string& q1, const std::string& q2) {
        return io::to_json(certify_isospectral(form(q1), form(q2))).dump();
    });

    m.def("level", [](const std::string& q) { return level(form(q)).get_str(); });
    m.def("sturm_cutoff", [](std::size_t dim, const std::string& n) { return sturm_cutoff(dim, BigInt(n)).get_str(); });

    m.def("construction_a", [](std::int64_t q, const std::vector<Codeword>& gens) {
        return io::to_json(construction_a(code(q, gens))).dump();
    });
    m.def("codewords", [](std::int64_t q, const std::vector<Codeword>& gens) { return codewords(code(q, gens)); });
    m.def("same_weight_distribution", [](std::int64_t q, const std::vector<Codeword>& g1,
                                         const std::vector<Codeword>& g2) {
        return same_weight_distribution(code(q, g1), code(q, g2));
    });
    m.def("absolute_pairing", [](std::int64_t q, const std::vector<Codeword>& g1, const std::vector<Codeword>& g2) {
        return absolute_pairing(code(q, g1), code(q, g2));
    });

    m.def("catalog", [](const std::string& name) { return io::to_json(catalog::get(name)).dump(); });

    m.def("min_set", [](const std::string& lambda, const std::vector<Vec3>& removed) {
        return min_set(MinQuery{parse_lambda(lambda), removed});
    }, py::arg("lambda_"), py::arg("removed") = std::vector<Vec3>{});

    m.def("poisson_check", [](const std::string& a, double t, double radius) {
        auto r = poisson_check(basis(a), t, radius);
        return std::make_tuple(r.lhs, r.rhs, r.rel_err);
    });

    m.def("run_symphony", [](std::size_t max_iter, std::size_t jobs) {
        SymphonyOptions opt;
        opt.max_iter = max_iter;
        opt.jobs = jobs;
        SymphonyReport r;
        {
            py::gil_scoped_release release;
            r = run_symphony(opt);
        }
        py::list its;
        for (const auto& s : r.iterations) {
            py::dict d;
            d["iteration"] = s.iteration;
            d["active"] = s.active;
            d["solo"] = s.solo;
            d["computed"] = s.computed;
            its.append(d);
        }
        py::dict out;
        out["iterations"] = its;
        out["terminated"] = r.terminated;
        out["all_diagonal"] = r.all_diagonal;
        out["total_computed"] = r.total_computed;
        out["solos"] = r.solos.size();
        return out;
    }, py::arg("max_iter") = 20, py::arg("jobs") = 1);
}
