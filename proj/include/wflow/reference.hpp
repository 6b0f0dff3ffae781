#pragma once

#include <vector>

#include <wflow/mesh.hpp>

namespace wflow::reference {

/// Plain serial implementations of the geometry kernels, written
/// independently of the OpenMP versions (scatter loops instead of CSR
/// gathers, plain accumulation instead of compensated sums). They exist so
/// the tests can cross-check the parallel kernels and the benchmark has a
/// baseline; nothing in the library calls them.

std::vector<double> vertex_areas(const TriangleMesh& mesh);
std::vector<Vec3> vertex_normals(const TriangleMesh& mesh);
std::vector<double> mean_curvature_scalar(const TriangleMesh& mesh);
std::vector<double> gauss_curvature(const TriangleMesh& mesh);
std::vector<double> laplace_beltrami(const TriangleMesh& mesh, const std::vector<double>& u);

double area(const TriangleMesh& mesh);
double signed_volume(const TriangleMesh& mesh);
double willmore_energy(const TriangleMesh& mesh);
double diameter(const TriangleMesh& mesh);

} // namespace wflow::reference
