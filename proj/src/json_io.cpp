#include "flattori/json_io.hpp"

#include <fstream>
#include <sstream>

namespace flattori::io {

namespace {

template <class T>
json matrix_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
        rows.push_back(std::move(r));
    }
    return rows;
}

json rays_json(const std::vector<IntRay>& rays) {
    json out = json::array();
    for (const auto& r : rays) out.push_back(r);
    return out;
}

json vecs_json(const std::vector<Vec3>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x);
    return out;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

json to_json(const Rat& r) { return r.get_str(); }

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(BigInt(j.dump()));
    throw DomainError("expected a rational string or integer, got " + j.dump());
}

json to_json(const RatMat& m) { return matrix_json(m); }
json to_json(const IntMat& m) { return matrix_json(m); }

RatMat ratmat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw DomainError("expected a nonempty nested array");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    RatMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw DomainError("ragged matrix in JSON");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rat_from_json(j[i][k]);
    }
    return m;
}

json to_json(const QuadraticForm& q) { return {{"dim", q.dim()}, {"Q", to_json(q.matrix())}}; }
json to_json(const LatticeBasis& b) { return {{"dim", b.dim()}, {"A", to_json(b.matrix())}}; }

QuadraticForm form_from_json(const json& j) {
    if (j.is_object() && j.contains("A") && !j.contains("Q")) return gram(basis_from_json(j));
    QuadraticForm q(ratmat_from_json(field(j, "Q")));
    if (j.contains("dim") && j.at("dim") != q.dim()) throw DomainError("\"dim\" does not match the matrix size");
    return q;
}

LatticeBasis basis_from_json(const json& j) {
    LatticeBasis b(ratmat_from_json(field(j, "A")));
    if (j.contains("dim") && j.at("dim") != b.dim()) throw DomainError("\"dim\" does not match the matrix size");
    return b;
}

json to_json(const RepSpectrum& s) {
    json out = json::array();
    for (const auto& [v, m] : s.entries) out.push_back({v.get_str(), m});
    return out;
}

json to_json(const LinearCode& c) { return {{"q", c.q}, {"n", c.n}, {"generators", c.generators}}; }

LinearCode code_from_json(const json& j, std::int64_t q_default) {
    const json* gens = &j;
    std::int64_t q = q_default;
    if (j.is_object()) {
        gens = &field(j, "generators");
        q = field(j, "q").get<std::int64_t>();
    }
    if (q < 2) throw DomainError("code modulus must be at least 2");
    if (!gens->is_array()) throw DomainError("generators must be an array of integer vectors");
    std::vector<Codeword> g;
    std::size_t n = j.is_object() && j.contains("n") ? j.at("n").get<std::size_t>() : 0;
    for (const auto& row : *gens) g.push_back(row.get<Codeword>());
    if (n == 0 && !g.empty()) n = g[0].size();
    return LinearCode(q, n, std::move(g));
}

json to_json(const Cone& c) {
    return {{"dim", c.dim()}, {"closed", rays_json(c.closed())}, {"strict", rays_json(c.strict())},
            {"edges", rays_json(c.edges())}};
}

json to_json(const InTuneCone& t) {
    return {{"cone", to_json(t.cone)}, {"lambda", lambda_name(t.lambda)}, {"k", t.k()},
            {"xs", vecs_json(t.xs)},   {"ys", vecs_json(t.ys)}};
}

json to_json(const Certificate& c) {
    json j = {{"verdict", verdict_name(c.verdict)},
              {"det_equal", c.det_equal},
              {"scale", c.scale.get_str()},
              {"padded", c.padded},
              {"level", c.level.get_str()},
              {"cutoff", c.cutoff.get_str()},
              {"checked_to", c.checked_to.get_str()},
              {"assumes_real_character", c.assumes_real_character}};
    if (!c.reason.empty()) j["reason"] = c.reason;
    if (c.verdict == Verdict::NotIsospectral && c.mismatch_m1 != c.mismatch_m2)
        j["mismatch"] = {{"value", c.mismatch_value.get_str()}, {"m1", c.mismatch_m1}, {"m2", c.mismatch_m2}};
    return j;
}

json to_json(const catalog::Entry& e) {
    json j = {{"name", e.name}};
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LatticeBasis>) {
                j["kind"] = "LatticeBasis";
                j["payload"] = to_json(p);
            } else if constexpr (std::is_same_v<T, QuadraticForm>) {
                j["kind"] = "QuadraticForm";
                j["payload"] = to_json(p);
            } else if constexpr (std::is_same_v<T, catalog::BasisPair>) {
                j["kind"] = "BasisPair";
                j["payload"] = {to_json(p.first), to_json(p.second)};
            } else if constexpr (std::is_same_v<T, catalog::FormPair>) {
                j["kind"] = "FormPair";
                j["payload"] = {to_json(p.first), to_json(p.second)};
            } else {
                j["kind"] = "CodePair";
                j["payload"] = {to_json(p.first), to_json(p.second)};
            }
        },
        e.payload);
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw DomainError(path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

}  // namespace flattori::io
