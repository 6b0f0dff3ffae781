#include <wflow/reference.hpp>

#include <cmath>
#include <numbers>

namespace wflow::reference {

namespace {

double face_area(const TriangleMesh& m, const Face& f) {
    const auto& p = m.positions();
    return 0.5 * norm(cross(p[f[1]] - p[f[0]], p[f[2]] - p[f[0]]));
}

double cot_at(const Vec3& apex, const Vec3& a, const Vec3& b) {
    const Vec3 u = a - apex, v = b - apex;
    return dot(u, v) / norm(cross(u, v));
}

} // namespace

std::vector<double> vertex_areas(const TriangleMesh& mesh) {
    std::vector<double> areas(mesh.vertex_count(), 0.0);
    for (const Face& f : mesh.faces()) {
        const double third = face_area(mesh, f) / 3.0;
        for (int v : f)
            areas[v] += third;
    }
    return areas;
}

std::vector<Vec3> vertex_normals(const TriangleMesh& mesh) {
    const auto& p = mesh.positions();
    std::vector<Vec3> normals(mesh.vertex_count());
    for (const Face& f : mesh.faces()) {
        const Vec3 c = cross(p[f[1]] - p[f[0]], p[f[2]] - p[f[0]]);
        for (int v : f)
            normals[v] += c;
    }
    for (Vec3& n : normals)
        n = normalized(n);
    return normals;
}

std::vector<double> mean_curvature_scalar(const TriangleMesh& mesh) {
    const auto& p = mesh.positions();
    std::vector<Vec3> cot_sum(mesh.vertex_count());
    for (const Face& f : mesh.faces())
        for (int c = 0; c < 3; ++c) {
            const int v = f[c], a = f[(c + 1) % 3], b = f[(c + 2) % 3];
            cot_sum[v] += 0.5 * (cot_at(p[b], p[v], p[a]) * (p[v] - p[a]) + cot_at(p[a], p[v], p[b]) * (p[v] - p[b]));
        }
    const std::vector<double> areas = vertex_areas(mesh);
    const std::vector<Vec3> normals = vertex_normals(mesh);
    std::vector<double> h(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        const Vec3 hv = cot_sum[v] / (2.0 * areas[v]);
        h[v] = (dot(hv, normals[v]) < 0.0 ? -1.0 : 1.0) * norm(hv);
    }
    return h;
}

std::vector<double> gauss_curvature(const TriangleMesh& mesh) {
    const auto& p = mesh.positions();
    std::vector<double> defect(mesh.vertex_count(), 2.0 * std::numbers::pi);
    for (const Face& f : mesh.faces())
        for (int c = 0; c < 3; ++c) {
            const int v = f[c];
            const Vec3 u = p[f[(c + 1) % 3]] - p[v], w = p[f[(c + 2) % 3]] - p[v];
            defect[v] -= std::atan2(norm(cross(u, w)), dot(u, w));
        }
    const std::vector<double> areas = vertex_areas(mesh);
    for (int v = 0; v < mesh.vertex_count(); ++v)
        defect[v] /= areas[v];
    return defect;
}

std::vector<double> laplace_beltrami(const TriangleMesh& mesh, const std::vector<double>& u) {
    const auto& p = mesh.positions();
    std::vector<double> sum(mesh.vertex_count(), 0.0);
    for (const Face& f : mesh.faces())
        for (int c = 0; c < 3; ++c) {
            const int v = f[c], a = f[(c + 1) % 3], b = f[(c + 2) % 3];
            sum[v] += 0.5 * (cot_at(p[b], p[v], p[a]) * (u[a] - u[v]) + cot_at(p[a], p[v], p[b]) * (u[b] - u[v]));
        }
    const std::vector<double> areas = vertex_areas(mesh);
    for (int v = 0; v < mesh.vertex_count(); ++v)
        sum[v] /= areas[v];
    return sum;
}

double area(const TriangleMesh& mesh) {
    double total = 0.0;
    for (const Face& f : mesh.faces())
        total += face_area(mesh, f);
    return total;
}

double signed_volume(const TriangleMesh& mesh) {
    const auto& p = mesh.positions();
    double total = 0.0;
    for (const Face& f : mesh.faces())
        total += dot(cross(p[f[0]], p[f[1]]), p[f[2]]);
    return total / 6.0;
}

double willmore_energy(const TriangleMesh& mesh) {
    const std::vector<double> h = mean_curvature_scalar(mesh);
    const std::vector<double> areas = vertex_areas(mesh);
    double total = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v)
        total += h[v] * h[v] * areas[v];
    return total;
}

double diameter(const TriangleMesh& mesh) {
    const auto& p = mesh.positions();
    double best = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            best = std::max(best, norm2(p[i] - p[j]));
    return std::sqrt(best);
}

} // namespace wflow::reference
