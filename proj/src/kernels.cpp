#include <wflow/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <wflow/errors.hpp>
#include <wflow/reduction.hpp>

namespace wflow::kernels {

namespace {

constexpr double kPi = std::numbers::pi;

long long ll(std::size_t n) { return static_cast<long long>(n); }

} // namespace

double face_area_floor(std::span<const Vec3> positions) {
    if (positions.empty())
        return 0.0;
    Vec3 lo = positions[0], hi = positions[0];
    for (const Vec3& p : positions) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        hi.z = std::max(hi.z, p.z);
    }
    const double diag2 = norm2(hi - lo);
    return kDegenerateAreaFactor * diag2;
}

bool geometry_ok(std::span<const Vec3> positions, const MeshTopology& topo, double area_floor) {
    for (const Vec3& p : positions)
        if (!is_finite(p))
            return false;
    bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (long long f = 0; f < ll(topo.faces.size()); ++f) {
        const Face& face = topo.faces[f];
        const Vec3 c = cross(positions[face[1]] - positions[face[0]], positions[face[2]] - positions[face[0]]);
        ok = ok && (0.5 * norm(c) > area_floor);
    }
    return ok;
}

void face_geometry(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf) {
    const std::size_t nf = topo.faces.size();
    buf.face_area.resize(nf);
    buf.face_cross.resize(nf);
    buf.face_cot.resize(nf);
    const double floor = face_area_floor(positions);

    bool degenerate = false;
#pragma omp parallel for schedule(static) reduction(|| : degenerate)
    for (long long f = 0; f < ll(nf); ++f) {
        const Face& face = topo.faces[f];
        const Vec3& p0 = positions[face[0]];
        const Vec3& p1 = positions[face[1]];
        const Vec3& p2 = positions[face[2]];
        const Vec3 c = cross(p1 - p0, p2 - p0);
        const double cn = norm(c);
        const double area = 0.5 * cn;
        buf.face_cross[f] = c;
        buf.face_area[f] = area;
        if (!(area > floor) || !std::isfinite(area)) {
            degenerate = true;
            buf.face_cot[f] = {0.0, 0.0, 0.0};
            continue;
        }
        // cot of the interior angle at each corner
        const Vec3 e01 = p1 - p0, e02 = p2 - p0, e12 = p2 - p1;
        buf.face_cot[f][0] = dot(e01, e02) / cn;
        buf.face_cot[f][1] = dot(p0 - p1, e12) / cn;
        buf.face_cot[f][2] = dot(p0 - p2, p1 - p2) / cn;
    }
    if (degenerate)
        throw DegenerateMeshError("face area under the degenerate threshold");
}

void vertex_areas(const MeshTopology& topo, Buffers& buf) {
    const int nv = topo.vertex_count;
    buf.vertex_area.resize(nv);
#pragma omp parallel for schedule(static)
    for (long long v = 0; v < nv; ++v) {
        double a = 0.0;
        for (int i = topo.vertex_face_offset[v]; i < topo.vertex_face_offset[v + 1]; ++i)
            a += buf.face_area[topo.vertex_faces[i].face];
        buf.vertex_area[v] = a / 3.0;
    }
}

void vertex_normals(std::span<const Vec3> /*positions*/, const MeshTopology& topo, Buffers& buf) {
    const int nv = topo.vertex_count;
    buf.vertex_normal.resize(nv);
    bool degenerate = false;
#pragma omp parallel for schedule(static) reduction(|| : degenerate)
    for (long long v = 0; v < nv; ++v) {
        Vec3 sum{};
        for (int i = topo.vertex_face_offset[v]; i < topo.vertex_face_offset[v + 1]; ++i)
            sum += buf.face_cross[topo.vertex_faces[i].face]; // 2 * area * normal
        const double n = norm(sum);
        if (n < 1e-12) {
            degenerate = true;
            buf.vertex_normal[v] = Vec3{0, 0, 0};
        } else {
            buf.vertex_normal[v] = sum / n;
        }
    }
    if (degenerate)
        throw DegenerateMeshError("vanishing area-weighted normal at a vertex");
}

void mean_curvature(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf) {
    const int nv = topo.vertex_count;
    buf.mean_curvature_vec.resize(nv);
    buf.mean_curvature.resize(nv);
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (long long v = 0; v < nv; ++v) {
        Vec3 sum{};
        for (int i = topo.vertex_face_offset[v]; i < topo.vertex_face_offset[v + 1]; ++i) {
            const auto [f, c] = topo.vertex_faces[i];
            const Face& face = topo.faces[f];
            const int a = face[(c + 1) % 3];
            const int b = face[(c + 2) % 3];
            // edge (v,a) is opposite corner b; edge (v,b) opposite corner a
            sum += 0.5 * (buf.face_cot[f][(c + 2) % 3] * (positions[v] - positions[a]) +
                          buf.face_cot[f][(c + 1) % 3] * (positions[v] - positions[b]));
        }
        const Vec3 hv = sum / (2.0 * buf.vertex_area[v]);
        buf.mean_curvature_vec[v] = hv;
        const double mag = norm(hv);
        const double sign = dot(hv, buf.vertex_normal[v]) < 0.0 ? -1.0 : 1.0;
        buf.mean_curvature[v] = sign * mag;
        bad = bad || !std::isfinite(mag);
    }
    if (bad)
        throw DegenerateMeshError("non-finite mean curvature (cotangent overflow)");
}

void gauss_curvature(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf) {
    const int nv = topo.vertex_count;
    buf.gauss_curvature.resize(nv);
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (long long v = 0; v < nv; ++v) {
        double angle_sum = 0.0;
        for (int i = topo.vertex_face_offset[v]; i < topo.vertex_face_offset[v + 1]; ++i) {
            const auto [f, c] = topo.vertex_faces[i];
            const Face& face = topo.faces[f];
            const Vec3 ea = positions[face[(c + 1) % 3]] - positions[v];
            const Vec3 eb = positions[face[(c + 2) % 3]] - positions[v];
            angle_sum += std::atan2(norm(cross(ea, eb)), dot(ea, eb));
        }
        const double k = (2.0 * kPi - angle_sum) / buf.vertex_area[v];
        buf.gauss_curvature[v] = k;
        bad = bad || !std::isfinite(k);
    }
    if (bad)
        throw DegenerateMeshError("non-finite Gaussian curvature");
}

void laplace_beltrami(std::span<const Vec3> positions, const MeshTopology& topo, std::span<const double> u,
                      Buffers& buf, std::vector<double>& out) {
    (void)positions;
    const int nv = topo.vertex_count;
    out.resize(nv);
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (long long v = 0; v < nv; ++v) {
        double sum = 0.0;
        for (int i = topo.vertex_face_offset[v]; i < topo.vertex_face_offset[v + 1]; ++i) {
            const auto [f, c] = topo.vertex_faces[i];
            const Face& face = topo.faces[f];
            const int a = face[(c + 1) % 3];
            const int b = face[(c + 2) % 3];
            sum += 0.5 * (buf.face_cot[f][(c + 2) % 3] * (u[a] - u[v]) + buf.face_cot[f][(c + 1) % 3] * (u[b] - u[v]));
        }
        out[v] = sum / buf.vertex_area[v];
        bad = bad || !std::isfinite(out[v]);
    }
    if (bad)
        throw DegenerateMeshError("non-finite Laplacian (cotangent overflow)");
}

void curvature_pipeline(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf) {
    face_geometry(positions, topo, buf);
    vertex_areas(topo, buf);
    vertex_normals(positions, topo, buf);
    mean_curvature(positions, topo, buf);
}

double total_area(const MeshTopology& topo, Buffers& buf) {
    (void)topo;
    return deterministic_sum(buf.face_area);
}

double signed_volume(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf) {
    const std::size_t nf = topo.faces.size();
    buf.scratch.resize(nf);
#pragma omp parallel for schedule(static)
    for (long long f = 0; f < ll(nf); ++f) {
        const Face& face = topo.faces[f];
        buf.scratch[f] = dot(cross(positions[face[0]], positions[face[1]]), positions[face[2]]) / 6.0;
    }
    return deterministic_sum(buf.scratch);
}

double willmore_energy(std::span<const Vec3> positions, const MeshTopology& topo, Buffers& buf) {
    curvature_pipeline(positions, topo, buf);
    const int nv = topo.vertex_count;
    buf.scratch.resize(nv);
#pragma omp parallel for schedule(static)
    for (long long v = 0; v < nv; ++v)
        buf.scratch[v] = buf.mean_curvature[v] * buf.mean_curvature[v] * buf.vertex_area[v];
    return deterministic_sum(std::span<const double>(buf.scratch.data(), nv));
}

double helfrich_energy(std::span<const Vec3> positions, const MeshTopology& topo, double lambda, Buffers& buf) {
    const double w = willmore_energy(positions, topo, buf);
    return w + lambda * signed_volume(positions, topo, buf);
}

} // namespace wflow::kernels
