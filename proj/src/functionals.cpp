#include <wflow/functionals.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json_detail.hpp"
#include <wflow/curvature.hpp>
#include <wflow/errors.hpp>
#include <wflow/kernels.hpp>
#include <wflow/reduction.hpp>

namespace wflow {

namespace {

constexpr double kPi = std::numbers::pi;

/// Sign of the curvature part of the formula gradient, calibrated once
/// against the finite-difference gradient on an ellipsoid (lambda = 0):
/// with outward normals and H = +1/r on spheres the formula as implemented
/// ascends the discrete energy with sigma = +1.
constexpr double kCurvatureGradientSign = 1.0;

struct Vec2 {
    double x, y;
};

double cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
double dot2(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// Signed area of disc(origin, R) intersected with triangle (0, p, q).
/// Summed over the directed edges of a polygon this yields the signed
/// disc-polygon intersection area.
double disc_wedge_area(const Vec2& p, const Vec2& q, double R) {
    const double r2 = R * R;
    auto sector = [&](const Vec2& u, const Vec2& v) {
        return 0.5 * r2 * std::atan2(cross2(u, v), dot2(u, v));
    };
    const bool p_in = dot2(p, p) <= r2;
    const bool q_in = dot2(q, q) <= r2;
    if (p_in && q_in)
        return 0.5 * cross2(p, q);

    const Vec2 d{q.x - p.x, q.y - p.y};
    const double a = dot2(d, d);
    if (a == 0.0)
        return 0.0;
    const double b = 2.0 * dot2(p, d);
    const double c = dot2(p, p) - r2;
    const double disc = b * b - 4.0 * a * c;

    if (p_in) { // exits through t+
        const double t = (-b + std::sqrt(std::max(disc, 0.0))) / (2.0 * a);
        const Vec2 m{p.x + t * d.x, p.y + t * d.y};
        return 0.5 * cross2(p, m) + sector(m, q);
    }
    if (q_in) { // enters through t-
        const double t = (-b - std::sqrt(std::max(disc, 0.0))) / (2.0 * a);
        const Vec2 m{p.x + t * d.x, p.y + t * d.y};
        return sector(p, m) + 0.5 * cross2(m, q);
    }
    if (disc <= 0.0)
        return sector(p, q);
    const double root = std::sqrt(disc);
    const double t1 = (-b - root) / (2.0 * a);
    const double t2 = (-b + root) / (2.0 * a);
    if (t1 >= 1.0 || t2 <= 0.0 || t1 >= t2)
        return sector(p, q);
    const Vec2 m1{p.x + t1 * d.x, p.y + t1 * d.y};
    const Vec2 m2{p.x + t2 * d.x, p.y + t2 * d.y};
    return sector(p, m1) + 0.5 * cross2(m1, m2) + sector(m2, q);
}

/// Exact area of triangle (p0,p1,p2) inside the ball B_r(x).
double clipped_triangle_area(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& x, double r) {
    const Vec3 n = cross(p1 - p0, p2 - p0);
    const double n_norm = norm(n);
    if (n_norm == 0.0)
        return 0.0;
    const Vec3 u = n / n_norm;
    const double d_plane = dot(x - p0, u);
    const double rho2 = r * r - d_plane * d_plane;
    if (rho2 <= 0.0)
        return 0.0;
    const Vec3 origin = x - d_plane * u; // x projected into the plane
    const Vec3 e1 = normalized(p1 - p0);
    const Vec3 e2 = cross(u, e1);
    auto project = [&](const Vec3& p) { return Vec2{dot(p - origin, e1), dot(p - origin, e2)}; };
    const Vec2 q0 = project(p0), q1 = project(p1), q2 = project(p2);
    const double R = std::sqrt(rho2);
    const double signed_area = disc_wedge_area(q0, q1, R) + disc_wedge_area(q1, q2, R) + disc_wedge_area(q2, q0, R);
    return std::abs(signed_area);
}

} // namespace

double area(const TriangleMesh& mesh) {
    kernels::Buffers buf;
    kernels::face_geometry(mesh.positions(), mesh.topology(), buf);
    return kernels::total_area(mesh.topology(), buf);
}

double enclosed_volume(const TriangleMesh& mesh) {
    kernels::Buffers buf;
    return kernels::signed_volume(mesh.positions(), mesh.topology(), buf);
}

double willmore_energy(const TriangleMesh& mesh) {
    kernels::Buffers buf;
    return kernels::willmore_energy(mesh.positions(), mesh.topology(), buf);
}

double helfrich_energy(const TriangleMesh& mesh, double lambda) {
    kernels::Buffers buf;
    return kernels::helfrich_energy(mesh.positions(), mesh.topology(), lambda, buf);
}

double isoperimetric_ratio(const TriangleMesh& mesh) {
    const double a = area(mesh);
    if (!(a > 0.0))
        throw DomainError("isoperimetric_ratio: area must be positive");
    const double v = std::abs(enclosed_volume(mesh));
    return std::cbrt(6.0 * std::sqrt(kPi)) * std::cbrt(v) / std::sqrt(a);
}

double diameter(const TriangleMesh& mesh) {
    const auto& pos = mesh.positions();
    const long long nv = static_cast<long long>(pos.size());
    double best = 0.0;
#pragma omp parallel for schedule(dynamic, 64) reduction(max : best)
    for (long long i = 0; i < nv; ++i)
        for (long long j = i + 1; j < nv; ++j)
            best = std::max(best, norm2(pos[i] - pos[j]));
    return std::sqrt(best);
}

double clipped_area(const TriangleMesh& mesh, const Vec3& center, double r) {
    const auto& pos = mesh.positions();
    KahanSum sum;
    for (const Face& f : mesh.faces())
        sum.add(clipped_triangle_area(pos[f[0]], pos[f[1]], pos[f[2]], center, r));
    return sum.value();
}

double density_ratio_sup(const TriangleMesh& mesh, std::span<const double> radii) {
    if (radii.empty())
        throw DomainError("density_ratio_sup: radii grid is empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0))
            throw DomainError("density_ratio_sup: radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw DomainError("density_ratio_sup: radii must be ascending");
    }

    const auto& pos = mesh.positions();
    const auto& faces = mesh.faces();
    const int nv = mesh.vertex_count();
    const int nf = mesh.face_count();

    kernels::Buffers buf;
    kernels::face_geometry(mesh.positions(), mesh.topology(), buf);

    std::vector<Vec3> centroid(nf);
    std::vector<double> circum(nf); // max corner distance from the centroid
    for (int f = 0; f < nf; ++f) {
        const Vec3 c = (pos[faces[f][0]] + pos[faces[f][1]] + pos[faces[f][2]]) / 3.0;
        centroid[f] = c;
        circum[f] = std::sqrt(std::max({norm2(pos[faces[f][0]] - c), norm2(pos[faces[f][1]] - c),
                                        norm2(pos[faces[f][2]] - c)}));
    }

    double best = 0.0;
#pragma omp parallel reduction(max : best)
    {
        std::vector<double> dmax2(nf), reach(nf);
#pragma omp for schedule(dynamic, 8)
        for (int v = 0; v < nv; ++v) {
            const Vec3 x = pos[v];
            for (int f = 0; f < nf; ++f) {
                dmax2[f] = std::max({norm2(pos[faces[f][0]] - x), norm2(pos[faces[f][1]] - x),
                                     norm2(pos[faces[f][2]] - x)});
                const double lo = std::max(0.0, norm(centroid[f] - x) - circum[f]);
                reach[f] = lo * lo;
            }
            for (double r : radii) {
                const double r2 = r * r;
                KahanSum sum;
                for (int f = 0; f < nf; ++f) {
                    if (dmax2[f] <= r2)
                        sum.add(buf.face_area[f]);
                    else if (reach[f] < r2)
                        sum.add(clipped_triangle_area(pos[faces[f][0]], pos[faces[f][1]], pos[faces[f][2]], x, r));
                }
                best = std::max(best, sum.value() / r2);
            }
        }
    }
    return best;
}

std::vector<double> default_density_radii(const TriangleMesh& mesh, int n) {
    if (n < 1)
        throw DomainError("default_density_radii: need at least one radius");
    const double lo = mesh.min_edge_length();
    const double hi = diameter(mesh);
    std::vector<double> radii;
    if (!(hi > lo) || n == 1) {
        radii.push_back(std::max(lo, hi));
        return radii;
    }
    radii.reserve(n);
    for (int k = 0; k < n; ++k)
        radii.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
    return radii;
}

VectorField gradient_field(const TriangleMesh& mesh, double lambda) {
    kernels::Buffers buf;
    kernels::curvature_pipeline(mesh.positions(), mesh.topology(), buf);
    kernels::gauss_curvature(mesh.positions(), mesh.topology(), buf);
    std::vector<double> lap_h;
    kernels::laplace_beltrami(mesh.positions(), mesh.topology(), buf.mean_curvature, buf, lap_h);

    const int nv = mesh.vertex_count();
    VectorField g{mesh.id(), std::vector<Vec3>(nv)};
#pragma omp parallel for schedule(static)
    for (long long v = 0; v < nv; ++v) {
        const double h = buf.mean_curvature[v];
        const double k = buf.gauss_curvature[v];
        const double curv = lap_h[v] + 2.0 * h * (h * h - k);
        g.values[v] = (kCurvatureGradientSign * curv + lambda) * buf.vertex_normal[v];
    }
    return g;
}

VectorField fd_gradient(const TriangleMesh& mesh, double lambda, double h) {
    if (!(h > 0.0))
        throw DomainError("fd_gradient: step must be positive");
    const auto& base = mesh.positions();
    const auto& topo = mesh.topology();
    const int nv = mesh.vertex_count();

    kernels::Buffers area_buf;
    kernels::face_geometry(base, topo, area_buf);
    kernels::vertex_areas(topo, area_buf);

    VectorField g{mesh.id(), std::vector<Vec3>(nv)};
#pragma omp parallel
    {
        std::vector<Vec3> pos(base.begin(), base.end());
        kernels::Buffers buf;
#pragma omp for schedule(dynamic, 8)
        for (int v = 0; v < nv; ++v) {
            Vec3 grad;
            for (int axis = 0; axis < 3; ++axis) {
                const double saved = component(pos[v], axis);
                set_component(pos[v], axis, saved + h);
                const double e_plus = kernels::helfrich_energy(pos, topo, lambda, buf);
                set_component(pos[v], axis, saved - h);
                const double e_minus = kernels::helfrich_energy(pos, topo, lambda, buf);
                set_component(pos[v], axis, saved);
                set_component(grad, axis, (e_plus - e_minus) / (2.0 * h * area_buf.vertex_area[v]));
            }
            g.values[v] = grad;
        }
    }
    return g;
}

double scaling_identity_residual(const TriangleMesh& mesh, double lambda, const Vec3& p, GradientRoute which,
                                 double fd_step) {
    const VectorField g = which == GradientRoute::formula ? gradient_field(mesh, lambda)
                                                          : fd_gradient(mesh, lambda, fd_step);
    const ScalarField areas = vertex_areas(mesh);
    const auto& pos = mesh.positions();
    KahanSum s;
    for (int v = 0; v < mesh.vertex_count(); ++v)
        s.add(dot(g.values[v], pos[v] - p) * areas.values[v]);
    const double target = 3.0 * lambda * enclosed_volume(mesh);
    return std::abs(s.value() - target) / (1.0 + std::abs(target));
}

double field_l2_norm(const TriangleMesh& mesh, const VectorField& field) {
    const ScalarField areas = vertex_areas(mesh);
    KahanSum s;
    for (int v = 0; v < mesh.vertex_count(); ++v)
        s.add(norm2(field.values[v]) * areas.values[v]);
    return std::sqrt(s.value());
}

SurfaceDiagnostics compute_diagnostics(const TriangleMesh& mesh, double lambda) {
    SurfaceDiagnostics d;
    d.lambda = lambda;
    d.area = area(mesh);
    d.volume = enclosed_volume(mesh);
    d.willmore = willmore_energy(mesh);
    d.e_lambda = d.willmore + lambda * d.volume;
    d.iso_ratio = isoperimetric_ratio(mesh);
    d.diameter = diameter(mesh);
    const std::vector<double> radii = default_density_radii(mesh);
    d.density_ratio_sup = density_ratio_sup(mesh, radii);

    const CurvatureNorms norms = curvature_norms(mesh);
    const ScalarField areas = vertex_areas(mesh);
    KahanSum a0, a2;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        a0.add(norms.a0.values[v] * areas.values[v]);
        a2.add(norms.a2.values[v] * areas.values[v]);
    }
    d.a0_integral = a0.value();
    d.a2_integral = a2.value();
    d.willmore_gap_8pi = 8.0 * kPi - d.willmore;
    return d;
}

namespace detail {

nlohmann::ordered_json diagnostics_json(const SurfaceDiagnostics& d) {
    nlohmann::ordered_json j;
    j["area"] = d.area;
    j["volume"] = d.volume;
    j["willmore"] = d.willmore;
    j["e_lambda"] = d.e_lambda;
    j["lambda"] = d.lambda;
    j["iso_ratio"] = d.iso_ratio;
    j["diameter"] = d.diameter;
    j["density_ratio_sup"] = d.density_ratio_sup;
    j["a0_integral"] = d.a0_integral;
    j["a2_integral"] = d.a2_integral;
    j["willmore_gap_8pi"] = d.willmore_gap_8pi;
    return j;
}

} // namespace detail

std::string diagnostics_to_json(const SurfaceDiagnostics& d) { return detail::diagnostics_json(d).dump(); }

} // namespace wflow
