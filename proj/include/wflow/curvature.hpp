#pragma once

#include <wflow/fields.hpp>
#include <wflow/mesh.hpp>

namespace wflow {

/// Barycentric vertex areas; entries sum to the total mesh area.
ScalarField vertex_areas(const TriangleMesh& mesh);

/// Area-weighted unit outward normals.
VectorField vertex_normals(const TriangleMesh& mesh);

struct MeanCurvature {
    ScalarField h;    // signed scalar: +1/r on a radius-r sphere with outward normals
    VectorField hvec; // cotangent mean-curvature vector
};
MeanCurvature mean_curvature(const TriangleMesh& mesh);

/// Angle-defect Gaussian curvature; satisfies discrete Gauss-Bonnet exactly
/// up to roundoff.
ScalarField gauss_curvature(const TriangleMesh& mesh);

/// Cotangent Laplace-Beltrami of a scalar field on the mesh.
ScalarField laplace_beltrami(const TriangleMesh& mesh, const ScalarField& u);

struct CurvatureNorms {
    ScalarField a2; // |A|^2   = 4H^2 - 2K (clamp-consistent)
    ScalarField a0; // |A^0|^2 = 2(H^2 - K), clamped below at 0
    /// Total clamped mass: sum over vertices of max(0, -(2(H^2-K))) * area.
    double clamp_magnitude = 0.0;
};
CurvatureNorms curvature_norms(const TriangleMesh& mesh);

} // namespace wflow
