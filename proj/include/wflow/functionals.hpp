#pragma once

#include <span>
#include <vector>

#include <wflow/fields.hpp>
#include <wflow/mesh.hpp>

namespace wflow {

double area(const TriangleMesh& mesh);

/// Divergence-theorem signed volume; positive for outward-oriented convex
/// bodies.
double enclosed_volume(const TriangleMesh& mesh);

/// W = sum_v H_v^2 area_v. Scale invariant.
double willmore_energy(const TriangleMesh& mesh);

/// E_lambda = W + lambda * vol.
double helfrich_energy(const TriangleMesh& mesh, double lambda);

/// I(f) = (6 sqrt(pi))^(1/3) |vol|^(1/3) / area^(1/2); 1 for round spheres.
double isoperimetric_ratio(const TriangleMesh& mesh);

/// Exact maximum pairwise vertex distance (O(V^2)).
double diameter(const TriangleMesh& mesh);

/// Area of the surface inside the ball B_r(x), exact per-triangle clipping.
double clipped_area(const TriangleMesh& mesh, const Vec3& center, double r);

/// max over vertex centers and the given ascending radii of
/// area(mesh within B_r(x)) / r^2.
double density_ratio_sup(const TriangleMesh& mesh, std::span<const double> radii);

/// Log-spaced grid from min edge length to diameter (default 12 radii).
std::vector<double> default_density_radii(const TriangleMesh& mesh, int n = 12);

/// Discrete L2 gradient of E_lambda from the paper-style formula
/// (laplacian of H + 2H(H^2-K) + lambda) * normal. Ascent direction: the
/// flow moves along -gradient.
VectorField gradient_field(const TriangleMesh& mesh, double lambda);

/// Central finite differences of the discrete energy, divided by vertex
/// area: the ground-truth discrete L2 gradient. Oracle for gradient_field.
VectorField fd_gradient(const TriangleMesh& mesh, double lambda, double h);

enum class GradientRoute { formula, fd };

/// |sum_v g(v).(pos(v)-p) area(v) - 3 lambda vol| / (1 + |3 lambda vol|).
/// Exact homogeneity of the discrete energies makes the fd route vanish up
/// to the finite-difference step.
double scaling_identity_residual(const TriangleMesh& mesh, double lambda, const Vec3& p, GradientRoute which,
                                 double fd_step = 1e-5);

/// sqrt(sum |g|^2 area): L2(dmu) norm of a vertex vector field.
double field_l2_norm(const TriangleMesh& mesh, const VectorField& field);

/// One record of every static functional of a mesh.
struct SurfaceDiagnostics {
    double area = 0.0;
    double volume = 0.0;
    double willmore = 0.0;
    double e_lambda = 0.0;
    double lambda = 0.0;
    double iso_ratio = 0.0;
    double diameter = 0.0;
    double density_ratio_sup = 0.0;
    double a0_integral = 0.0;
    double a2_integral = 0.0;
    double willmore_gap_8pi = 0.0;
};

SurfaceDiagnostics compute_diagnostics(const TriangleMesh& mesh, double lambda);

/// Fixed-order flat JSON object (snake_case keys as listed in the struct).
std::string diagnostics_to_json(const SurfaceDiagnostics& d);

} // namespace wflow
