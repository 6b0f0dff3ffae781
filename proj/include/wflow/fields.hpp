#pragma once

#include <cstdint>
#include <vector>

#include <wflow/mesh.hpp>

namespace wflow {

/// Per-vertex scalar quantity bound to a specific mesh instance.
struct ScalarField {
    std::uint64_t mesh_id = 0;
    std::vector<double> values;
};

/// Per-vertex 3-vector quantity bound to a specific mesh instance.
struct VectorField {
    std::uint64_t mesh_id = 0;
    std::vector<Vec3> values;
};

/// Throws DomainError unless the field belongs to `mesh` and has one entry
/// per vertex; throws DegenerateMeshError on non-finite entries.
void check_field(const ScalarField& field, const TriangleMesh& mesh);
void check_field(const VectorField& field, const TriangleMesh& mesh);

} // namespace wflow
