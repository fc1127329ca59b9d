#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "casson/diagram.hpp"
#include "casson/geometry.hpp"

namespace casson {

struct CurveSample {
    double t = 0;
    Vec3 p;
    Vec3 d; // dp/dt
};

// Sampled C1 long knot: cubic Hermite between samples, exactly the x-axis
// outside the sampled range. Standardness outside [-1,1], embeddedness and
// transversality to N are checked by the named predicates below.
class LongKnotCurve {
public:
    LongKnotCurve() = default;
    explicit LongKnotCurve(std::vector<CurveSample> samples);

    Vec3 point(double t) const;
    Vec3 deriv(double t) const;
    Vec3 tangent(double t) const { return unit(deriv(t)); }

    double t_min() const { return samples_.front().t; }
    double t_max() const { return samples_.back().t; }
    const std::vector<CurveSample>& samples() const { return samples_; }

    void bounding_box(Vec3& lo, Vec3& hi) const;

    // Throws on violated invariants: standard tails, min separation of
    // non-adjacent samples, and (for in_kn) tangents clear of +-N.
    void check_standard() const;
    void check_embedded(double min_sep = 1e-6) const;
    void check_in_kn(const Vec3& n, double eps) const; // throws NotInKN

private:
    std::size_t segment(double t) const;
    std::vector<CurveSample> samples_;
};

// Closed sampled curve (periodic Hermite), parameter in [0, period).
class ClosedCurve {
public:
    ClosedCurve() = default;
    ClosedCurve(std::vector<Vec3> points, double period); // derivatives by centered differences

    Vec3 point(double t) const;
    Vec3 deriv(double t) const;
    double period() const { return period_; }
    const std::vector<CurveSample>& samples() const { return samples_; }

private:
    std::vector<CurveSample> samples_;
    double period_ = 1;
};

// Unit vector from K(s) to K(t); throws CoincidentPoints when they collide.
Vec3 gauss_direction(const LongKnotCurve& k, double s, double t);

// A crossing of the projection along N: parameters, signed per the local
// degree of the Gauss map (sign = sgn det[T_over, T_under] in the plane).
struct ProjCrossing {
    double under_t = 0;
    double over_t = 0;
    int sign = 1;
    double separation = 0; // |<K(over)-K(under), N>|
};

// All transverse self-crossings of the projection of K orthogonal to N.
std::vector<ProjCrossing> find_crossings(const LongKnotCurve& k, const Vec3& n);

// Gauss code of the projection (labels in order of first passage).
DoubleGaussDiagram diagram_from_curve(const LongKnotCurve& k, const Vec3& n);

// ---- Planar layouts and curve builders -----------------------------------

// A planar polyline path with C1 spline interpolation; crossings of the
// projection become +-h bridges (over up, under down).
struct PlanarLayout {
    std::vector<Vec2> waypoints;              // includes the (-1,0) and (1,0) endpoints
    std::vector<std::pair<int, int>> overrides; // optional explicit over passage choice
};

// Realize a double-crossing diagram from a planar layout. The layout's
// projection must have exactly the crossings of `g` in strand order;
// over/under follows g. Throws NotEmbeddable / TangentViolation.
LongKnotCurve curve_from_diagram(const DoubleGaussDiagram& g, const PlanarLayout& layout,
                                 double bridge_height);

// Built-in curves.
LongKnotCurve builtin_trivial();
LongKnotCurve builtin_trefoil(double bridge_height = 0.1);  // positive trefoil, 3 crossings
LongKnotCurve builtin_figure8(double bridge_height = 0.1);  // perturbed 7-petal projection of 4_1

// The trefoil's plane projection as a waypoint layout for curve_from_diagram.
PlanarLayout builtin_trefoil_layout();

// Petal projection of a pedal permutation as a long curve: when `perturb` is
// true the uebercrossing is resolved into pairwise crossings with directions
// and offsets matching pedal_geometry(p, seed).
class PedalPermutation;
LongKnotCurve petal_curve(const std::vector<int>& perm_levels, double bridge_height,
                          bool perturb, std::uint64_t seed = 1);

// Hopf link: unit circle in the xy-plane and a unit circle through its
// center in the xz-plane, oriented so the linking number is +1.
std::pair<ClosedCurve, ClosedCurve> builtin_hopf();
std::pair<ClosedCurve, ClosedCurve> builtin_distant_circles();

// Curve file format: {"samples": [{"t": ..., "p": [x,y,z]}, ...]}; tangents
// are recomputed by centered differences on load.
LongKnotCurve load_curve_json(const std::string& doc);
std::string curve_to_json(const LongKnotCurve& k);

} // namespace casson
