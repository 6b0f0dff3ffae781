#pragma once

#include <filesystem>
#include <string>

#include <wflow/mesh.hpp>

namespace wflow {

/// Strict OBJ subset: `v x y z`, `f i j k` (1-based), `#` comments, blank
/// lines. Anything else is a ParseError. The returned mesh is guaranteed
/// closed, manifold and consistently oriented (TopologyError otherwise).
TriangleMesh load_mesh(const std::filesystem::path& path);

/// Writes `v` lines with shortest round-trip decimals followed by `f` lines.
/// load_mesh(save_mesh(m)) reproduces positions bit-exactly.
void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path);

/// Serialization used by save_mesh, exposed for trace snapshots.
std::string to_obj_string(const TriangleMesh& mesh);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

} // namespace wflow
