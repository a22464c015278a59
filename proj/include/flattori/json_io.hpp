#pragma once

#include <string>

#include "json.hpp"

#include "flattori/catalog.hpp"
#include "flattori/codes.hpp"
#include "flattori/cones.hpp"
#include "flattori/forms.hpp"
#include "flattori/modular.hpp"
#include "flattori/symphony.hpp"

namespace flattori::io {

using nlohmann::json;

/// Rationals are strings "p/q" (or "p"); plain JSON integers are accepted on input.
json to_json(const Rat& r);
Rat rat_from_json(const json& j);

json to_json(const RatMat& m);
json to_json(const IntMat& m);
RatMat ratmat_from_json(const json& j);

/// {"dim": n, "Q": [[...]]}
json to_json(const QuadraticForm& q);
/// {"dim": n, "A": [[...]]}
json to_json(const LatticeBasis& b);
/// Accepts a form, or a basis (returns its Gram form).
QuadraticForm form_from_json(const json& j);
LatticeBasis basis_from_json(const json& j);

/// [[value, mult], ...]
json to_json(const RepSpectrum& s);

/// {"q", "n", "generators"}; a bare generator list needs q from the caller.
json to_json(const LinearCode& c);
LinearCode code_from_json(const json& j, std::int64_t q_default = 0);

/// {"dim", "closed", "strict", "edges"}
json to_json(const Cone& c);
json to_json(const InTuneCone& t);

json to_json(const Certificate& c);
json to_json(const catalog::Entry& e);

/// Parse a file; errors carry the path and parser location.
json read_json_file(const std::string& path);

}  // namespace flattori::io
