#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <wflow/mesh.hpp>

namespace wflow {

/// Icosahedron subdivided `level` times, vertices projected to `radius`.
/// V = 10 * 4^level + 2. level capped at 7.
TriangleMesh gen_icosphere(int level, double radius);

/// Icosphere mapped by diag(a, b, c).
TriangleMesh gen_ellipsoid(double a, double b, double c, int level);

/// Structured torus triangulation, genus 1; tube radius r around a circle of
/// radius R in the xy-plane.
TriangleMesh gen_torus(double R, double r, int n_major, int n_minor);

/// Two spheres of radius sphere_r bridged by a smooth neck of waist radius
/// neck_radius; `separation` is the gap between the spheres' inner poles.
/// Genus 0. Thinner necks raise the Willmore energy.
TriangleMesh gen_dumbbell(double sphere_r, double neck_radius, double separation, int resolution);

/// Outer sphere plus inner sphere joined through a small near-catenoid neck:
/// a thin closed shell of genus 0 whose enclosed volume is the material
/// between the spheres (~ 4 pi r^2 * thickness).
TriangleMesh gen_shell(double outer_r, double thickness, double neck_radius, int resolution);

/// One family stanza from a spec file: kind plus named scalar parameters.
/// With `count` present, parameters written as "lo:hi" sweep linearly.
struct FamilySpec {
    std::string kind;
    std::map<std::string, std::string> params;
    int count = 1;
    std::uint64_t seed = 0;

    /// Compact one-line echo used in reports.
    std::string echo() const;
};

/// Instantiates mesh `index` (0 <= index < count) of the family.
TriangleMesh gen_family_member(const FamilySpec& spec, int index);

/// Parses a family spec file: key = value stanzas separated by blank lines.
std::vector<FamilySpec> parse_family_specs(const std::string& text);

} // namespace wflow
