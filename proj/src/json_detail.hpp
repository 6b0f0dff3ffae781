#pragma once

#include <json.hpp>

#include <wflow/functionals.hpp>

namespace wflow::detail {

/// Diagnostics as an ordered JSON object; key order matches the struct.
nlohmann::ordered_json diagnostics_json(const SurfaceDiagnostics& d);

} // namespace wflow::detail
