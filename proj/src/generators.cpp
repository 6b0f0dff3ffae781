#include <wflow/generators.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <wflow/errors.hpp>
#include <wflow/obj_io.hpp>

namespace wflow {

namespace {

constexpr double kPi = std::numbers::pi;

// --- icosphere -------------------------------------------------------------

void icosahedron(std::vector<Vec3>& positions, std::vector<Face>& faces) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    positions = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                 {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
             {3, 8, 9},   {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
}

int midpoint(int a, int b, std::vector<Vec3>& positions, std::map<std::pair<int, int>, int>& cache) {
    const auto key = std::minmax(a, b);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    const int idx = static_cast<int>(positions.size());
    positions.push_back((positions[a] + positions[b]) * 0.5);
    cache.emplace(key, idx);
    return idx;
}

// --- surfaces of revolution ------------------------------------------------

struct ProfilePoint {
    double rho;
    double z;
};

// Closed surface from a profile running from the axis (rho=0) back to the
// axis. Interior samples must have rho > 0. `segments` azimuthal steps.
TriangleMesh revolve(const std::vector<ProfilePoint>& profile, int segments) {
    const int m = static_cast<int>(profile.size());
    if (m < 3 || profile.front().rho != 0.0 || profile.back().rho != 0.0)
        throw DomainError("revolve: profile must start and end on the axis");
    for (int i = 1; i + 1 < m; ++i)
        if (!(profile[i].rho > 0.0))
            throw DomainError("revolve: interior profile point has non-positive radius");

    std::vector<Vec3> positions;
    positions.push_back({0.0, 0.0, profile.front().z}); // top pole
    const int rings = m - 2;
    for (int i = 1; i + 1 < m; ++i)
        for (int k = 0; k < segments; ++k) {
            const double psi = 2.0 * kPi * k / segments;
            positions.push_back({profile[i].rho * std::cos(psi), profile[i].rho * std::sin(psi), profile[i].z});
        }
    positions.push_back({0.0, 0.0, profile.back().z}); // bottom pole
    const int bottom = static_cast<int>(positions.size()) - 1;

    auto ring_vertex = [&](int ring, int k) { return 1 + ring * segments + (k % segments); };

    std::vector<Face> faces;
    faces.reserve(2 * segments * rings);
    for (int k = 0; k < segments; ++k)
        faces.push_back({0, ring_vertex(0, k), ring_vertex(0, k + 1)});
    for (int ring = 0; ring + 1 < rings; ++ring)
        for (int k = 0; k < segments; ++k) {
            const int u0 = ring_vertex(ring, k), u1 = ring_vertex(ring, k + 1);
            const int l0 = ring_vertex(ring + 1, k), l1 = ring_vertex(ring + 1, k + 1);
            faces.push_back({u0, l0, l1});
            faces.push_back({u0, l1, u1});
        }
    for (int k = 0; k < segments; ++k)
        faces.push_back({bottom, ring_vertex(rings - 1, k + 1), ring_vertex(rings - 1, k)});

    return TriangleMesh(std::move(positions), std::move(faces));
}

// Appends `n` samples of a circular arc on a sphere: center (0,0,zc),
// radius R, polar angle running from a0 to a1 (angle measured from +z of the
// sphere). Endpoint a0 excluded when skip_first.
void append_sphere_arc(std::vector<ProfilePoint>& profile, double zc, double R, double a0, double a1, int n,
                       bool skip_first) {
    for (int i = skip_first ? 1 : 0; i <= n; ++i) {
        const double a = a0 + (a1 - a0) * i / n;
        profile.push_back({R * std::sin(a), zc + R * std::cos(a)});
    }
}

} // namespace

TriangleMesh gen_icosphere(int level, double radius) {
    if (level < 0 || level > 7)
        throw DomainError("gen_icosphere: level must be in [0, 7]");
    if (!(radius > 0.0))
        throw DomainError("gen_icosphere: radius must be positive");

    std::vector<Vec3> positions;
    std::vector<Face> faces;
    icosahedron(positions, faces);
    for (int l = 0; l < level; ++l) {
        std::map<std::pair<int, int>, int> cache;
        std::vector<Face> next;
        next.reserve(faces.size() * 4);
        for (const Face& f : faces) {
            const int ab = midpoint(f[0], f[1], positions, cache);
            const int bc = midpoint(f[1], f[2], positions, cache);
            const int ca = midpoint(f[2], f[0], positions, cache);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    for (Vec3& p : positions)
        p = normalized(p) * radius;
    return TriangleMesh(std::move(positions), std::move(faces));
}

TriangleMesh gen_ellipsoid(double a, double b, double c, int level) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw DomainError("gen_ellipsoid: semi-axes must be positive");
    TriangleMesh sphere = gen_icosphere(level, 1.0);
    std::vector<Vec3> positions = sphere.positions();
    for (Vec3& p : positions) {
        p.x *= a;
        p.y *= b;
        p.z *= c;
    }
    return TriangleMesh(std::move(positions), sphere.topology_ptr());
}

TriangleMesh gen_torus(double R, double r, int n_major, int n_minor) {
    if (!(R > r) || !(r > 0.0))
        throw DomainError("gen_torus: requires R > r > 0");
    if (n_major < 8 || n_minor < 8)
        throw DomainError("gen_torus: grid must be at least 8x8");

    std::vector<Vec3> positions;
    positions.reserve(static_cast<std::size_t>(n_major) * n_minor);
    for (int i = 0; i < n_major; ++i) {
        const double u = 2.0 * kPi * i / n_major;
        for (int j = 0; j < n_minor; ++j) {
            const double v = 2.0 * kPi * j / n_minor;
            const double w = R + r * std::cos(v);
            positions.push_back({w * std::cos(u), w * std::sin(u), r * std::sin(v)});
        }
    }
    auto vid = [&](int i, int j) { return (i % n_major) * n_minor + (j % n_minor); };
    std::vector<Face> faces;
    faces.reserve(static_cast<std::size_t>(n_major) * n_minor * 2);
    for (int i = 0; i < n_major; ++i)
        for (int j = 0; j < n_minor; ++j) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            faces.push_back({a, b, c});
            faces.push_back({a, c, d});
        }
    return TriangleMesh(std::move(positions), std::move(faces));
}

TriangleMesh gen_dumbbell(double sphere_r, double neck_radius, double separation, int resolution) {
    const double R = sphere_r, rn = neck_radius;
    if (!(R > 0.0) || !(rn > 0.0) || !(rn < R))
        throw DomainError("gen_dumbbell: requires 0 < neck_radius < sphere_r");
    if (separation < 0.0)
        throw DomainError("gen_dumbbell: separation must be >= 0");
    if (resolution < 8)
        throw DomainError("gen_dumbbell: resolution must be at least 8");

    // Junction on each sphere at 45 degrees from its inner pole; an even
    // quartic rho(z) bridges the two junctions C^1-continuously.
    const double theta = kPi / 4.0;
    const double center = R + separation / 2.0; // sphere centers at +-center
    const double zj = center - R * std::cos(theta);
    const double rhoj = R * std::sin(theta);
    const double slope = std::cos(theta) / std::sin(theta);
    if (!(rhoj > rn))
        throw DomainError("gen_dumbbell: neck_radius too large for the junction angle");

    // rho(z) = rn + b z^2 + c z^4 with rho(zj) = rhoj, rho'(zj) = slope
    const double det = 2.0 * std::pow(zj, 5);
    const double qb = ((rhoj - rn) * 4.0 * zj * zj * zj - std::pow(zj, 4) * slope) / det;
    const double qc = (zj * zj * slope - 2.0 * zj * (rhoj - rn)) / det;
    auto neck_rho = [&](double z) { return rn + qb * z * z + qc * z * z * z * z; };
    for (int i = 0; i <= 64; ++i) {
        const double z = zj * i / 64.0;
        if (!(neck_rho(z) > 0.0) || neck_rho(z) > rhoj * 1.5)
            throw DomainError("gen_dumbbell: neck profile degenerates for these parameters");
    }

    const double target = 2.0 * kPi * R / resolution;
    const int n_sphere = std::max(6, static_cast<int>(std::ceil(R * (kPi - theta) / target)));
    const double neck_span = 2.0 * zj;
    const int n_neck = std::max(8, static_cast<int>(std::ceil(neck_span * std::sqrt(1.0 + slope * slope) / target)));

    std::vector<ProfilePoint> profile;
    // right sphere: outer pole down to the junction (polar angle 0 .. pi - theta)
    append_sphere_arc(profile, center, R, 0.0, kPi - theta, n_sphere, false);
    for (int i = 1; i < n_neck; ++i) {
        const double z = zj - neck_span * i / n_neck;
        profile.push_back({neck_rho(z), z});
    }
    // left sphere: junction (polar angle theta from +z) down to its outer pole
    append_sphere_arc(profile, -center, R, theta, kPi, n_sphere, false);

    return revolve(profile, resolution);
}

TriangleMesh gen_shell(double outer_r, double thickness, double neck_radius, int resolution) {
    const double Ro = outer_r, t = thickness, rn = neck_radius;
    if (!(Ro > 0.0) || !(t > 0.0) || !(t < Ro / 4.0))
        throw DomainError("gen_shell: requires 0 < thickness < outer_r/4");
    if (resolution < 8)
        throw DomainError("gen_shell: resolution must be at least 8");
    const double Ri = Ro - t;
    if (!(rn > t / 2.0) || !(rn < Ri / 2.0))
        throw DomainError("gen_shell: neck_radius must satisfy thickness/2 < neck_radius < inner_r/2");

    const double zo = std::sqrt(Ro * Ro - rn * rn);
    const double zi = std::sqrt(Ri * Ri - rn * rn);
    const double zm = 0.5 * (zo + zi);
    const double h0 = 0.5 * (zo - zi);
    const double dip = rn / 2.0; // waist radius rn/2: near-catenoid turn
    const double d0 = h0 * rn / zo;
    const double d1 = h0 * rn / zi;

    // u-turn around the hole rim, polar form about (rn, zm); C^1 against
    // both sphere arcs
    auto turn_radius = [&](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        return h0 + (dip - h0) * s * s + s * c * (d0 * (1.0 + c) / 2.0 + d1 * (1.0 - c) / 2.0);
    };

    const double target = 2.0 * kPi * Ro / resolution;
    const double alpha_o = kPi - std::asin(rn / Ro); // hole angle from the south pole
    const double beta_i = std::asin(rn / Ri);
    const int n_outer = std::max(8, static_cast<int>(std::ceil(Ro * alpha_o / target)));
    const int n_inner = std::max(8, static_cast<int>(std::ceil(Ri * (kPi - beta_i) / target)));
    const int n_turn = std::max(12, static_cast<int>(std::ceil(kPi * std::max(h0, dip) / target)));

    std::vector<ProfilePoint> profile;
    // outer sphere: south pole (angle pi from +z) up to the hole edge
    append_sphere_arc(profile, 0.0, Ro, kPi, kPi - alpha_o, n_outer, false);
    for (int i = 1; i < n_turn; ++i) {
        const double phi = kPi * i / n_turn;
        const double r = turn_radius(phi);
        profile.push_back({rn - r * std::sin(phi), zm + r * std::cos(phi)});
    }
    // inner sphere: hole edge down to its south pole
    append_sphere_arc(profile, 0.0, Ri, beta_i, kPi, n_inner, false);

    TriangleMesh mesh = revolve(profile, resolution);
    // revolve() orients outward for a convex profile; here "outward of the
    // material" means the inner sphere faces the cavity. The single profile
    // traversal already does that; the volume sign check is in the tests.
    return mesh;
}

std::string FamilySpec::echo() const {
    std::ostringstream out;
    out << kind;
    for (const auto& [key, value] : params)
        out << ' ' << key << '=' << value;
    if (count != 1)
        out << " count=" << count;
    if (seed != 0)
        out << " seed=" << seed;
    return out.str();
}

namespace {

const std::map<std::string, std::set<std::string>> kKindParams = {
    {"icosphere", {"level", "radius", "jitter"}},
    {"ellipsoid", {"a", "b", "c", "level", "jitter"}},
    {"torus", {"R", "r", "n_major", "n_minor", "jitter"}},
    {"dumbbell", {"sphere_r", "neck_radius", "separation", "resolution", "jitter"}},
    {"shell", {"outer_r", "thickness", "neck_radius", "resolution", "jitter"}},
};

double resolve_param(const FamilySpec& spec, const std::string& key, double fallback, int index, bool* present = nullptr) {
    auto it = spec.params.find(key);
    if (present)
        *present = it != spec.params.end();
    if (it == spec.params.end())
        return fallback;
    const std::string& value = it->second;
    const auto colon = value.find(':');
    try {
        if (colon == std::string::npos)
            return std::stod(value);
        const double lo = std::stod(value.substr(0, colon));
        const double hi = std::stod(value.substr(colon + 1));
        if (spec.count < 2)
            throw ConfigError("range value for '" + key + "' needs count >= 2");
        return lo + (hi - lo) * index / (spec.count - 1);
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad numeric value '" + value + "' for '" + key + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("numeric value '" + value + "' for '" + key + "' out of range");
    }
}

int resolve_int(const FamilySpec& spec, const std::string& key, int fallback, int index) {
    return static_cast<int>(std::llround(resolve_param(spec, key, fallback, index)));
}

TriangleMesh apply_jitter(TriangleMesh mesh, double jitter, std::uint64_t seed, int index) {
    if (jitter <= 0.0)
        return mesh;
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(index));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const double scale = jitter * mesh.min_edge_length();
    std::vector<Vec3> positions = mesh.positions();
    for (Vec3& p : positions)
        p += Vec3{uni(rng), uni(rng), uni(rng)} * scale;
    return TriangleMesh(std::move(positions), mesh.topology_ptr());
}

} // namespace

TriangleMesh gen_family_member(const FamilySpec& spec, int index) {
    auto kind_it = kKindParams.find(spec.kind);
    if (kind_it == kKindParams.end())
        throw ConfigError("unknown family kind '" + spec.kind + "'");
    for (const auto& [key, value] : spec.params)
        if (!kind_it->second.count(key))
            throw ConfigError("unknown parameter '" + key + "' for kind '" + spec.kind + "'");
    if (index < 0 || index >= spec.count)
        throw DomainError("family index out of range");

    const double jitter = resolve_param(spec, "jitter", 0.0, index);
    TriangleMesh mesh = [&]() -> TriangleMesh {
        if (spec.kind == "icosphere")
            return gen_icosphere(resolve_int(spec, "level", 3, index), resolve_param(spec, "radius", 1.0, index));
        if (spec.kind == "ellipsoid")
            return gen_ellipsoid(resolve_param(spec, "a", 1.0, index), resolve_param(spec, "b", 1.0, index),
                                 resolve_param(spec, "c", 1.0, index), resolve_int(spec, "level", 3, index));
        if (spec.kind == "torus")
            return gen_torus(resolve_param(spec, "R", 2.0, index), resolve_param(spec, "r", 1.0, index),
                             resolve_int(spec, "n_major", 32, index), resolve_int(spec, "n_minor", 32, index));
        if (spec.kind == "dumbbell")
            return gen_dumbbell(resolve_param(spec, "sphere_r", 1.0, index),
                                resolve_param(spec, "neck_radius", 0.5, index),
                                resolve_param(spec, "separation", 0.5, index),
                                resolve_int(spec, "resolution", 48, index));
        return gen_shell(resolve_param(spec, "outer_r", 1.0, index), resolve_param(spec, "thickness", 0.1, index),
                         resolve_param(spec, "neck_radius", 0.15, index), resolve_int(spec, "resolution", 48, index));
    }();
    return apply_jitter(std::move(mesh), jitter, spec.seed, index);
}

std::vector<FamilySpec> parse_family_specs(const std::string& text) {
    std::vector<FamilySpec> specs;
    FamilySpec current;
    bool open = false;
    long line_no = 0;

    auto flush = [&]() {
        if (!open)
            return;
        if (current.kind.empty())
            throw ConfigError("family stanza " + std::to_string(specs.size() + 1) + " is missing 'kind'");
        specs.push_back(current);
        current = FamilySpec{};
        open = false;
    };

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            flush();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value' in family spec", line_no);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("empty key or value in family spec", line_no);
        open = true;
        if (key == "kind")
            current.kind = value;
        else if (key == "count")
            current.count = std::stoi(value);
        else if (key == "seed")
            current.seed = std::stoull(value);
        else
            current.params[key] = value;
    }
    flush();
    return specs;
}

} // namespace wflow
