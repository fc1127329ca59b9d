#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "casson/curve.hpp"
#include "casson/mc.hpp"

namespace casson {

namespace {

const double kPi = std::acos(-1.0);

// Orthonormal frame completing n.
void frame_for(const Vec3& n, Vec3& e1, Vec3& e2) {
    Vec3 nn = unit(n);
    Vec3 seed = std::abs(nn.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = unit(cross(seed, nn));
    e2 = cross(nn, e1);
}

// C-infinity plateau: 1 on |u| <= flat, 0 on |u| >= 1.
double plateau(double u, double flat) {
    u = std::abs(u);
    if (u <= flat) return 1.0;
    if (u >= 1.0) return 0.0;
    auto phi = [](double v) { return v > 0 ? std::exp(-1.0 / v) : 0.0; };
    double a = phi((1.0 - u) / (1.0 - flat));
    double b = phi((u - flat) / (1.0 - flat));
    return a / (a + b);
}

// Standard bump: 1 at 0, support (-1,1).
double bump01(double u) {
    u = std::abs(u);
    if (u >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

// C1 planar spline through waypoints with optional prescribed tangents.
class Spline2 {
public:
    Spline2(std::vector<double> params, std::vector<Vec2> points,
            const Vec2* tan_start = nullptr, const Vec2* tan_end = nullptr)
        : u_(std::move(params)), p_(std::move(points)) {
        const std::size_t n = p_.size();
        m_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t lo = i == 0 ? 0 : i - 1;
            std::size_t hi = i + 1 == n ? i : i + 1;
            m_[i] = (p_[hi] - p_[lo]) * (1.0 / (u_[hi] - u_[lo]));
        }
        if (tan_start) m_.front() = *tan_start;
        if (tan_end) m_.back() = *tan_end;
    }

    Vec2 eval(double t) const {
        std::size_t i = 0;
        while (i + 2 < u_.size() && t > u_[i + 1]) ++i;
        double dt = u_[i + 1] - u_[i];
        double s = (t - u_[i]) / dt;
        double s2 = s * s, s3 = s2 * s;
        double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        return p_[i] * h00 + m_[i] * (h10 * dt) + p_[i + 1] * h01 + m_[i + 1] * (h11 * dt);
    }

private:
    std::vector<double> u_;
    std::vector<Vec2> p_;
    std::vector<Vec2> m_;
};

std::vector<double> chordlength_params(const std::vector<Vec2>& pts, double lo, double hi) {
    std::vector<double> u(pts.size(), lo);
    double total = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) total += norm2d(pts[i] - pts[i - 1]);
    double acc = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        acc += norm2d(pts[i] - pts[i - 1]);
        u[i] = lo + (hi - lo) * acc / total;
    }
    return u;
}

// Sample a position function into a LongKnotCurve, derivatives by central
// differences, axis tails appended out to +-t_tail.
LongKnotCurve assemble(const std::function<Vec3(double)>& pos, int n_inner, double t_tail) {
    std::vector<CurveSample> samples;
    auto push = [&](double t) {
        const double dh = 1e-6;
        CurveSample s;
        s.t = t;
        s.p = pos(t);
        s.d = (pos(t + dh) - pos(t - dh)) / (2 * dh);
        samples.push_back(s);
    };
    for (double t : {-t_tail, -(1 + t_tail) / 2}) samples.push_back({t, {t, 0, 0}, {1, 0, 0}});
    for (int i = 0; i <= n_inner; ++i) {
        double t = -1.0 + 2.0 * i / n_inner;
        if (std::abs(t) >= 1.0 - 1e-12) {
            samples.push_back({t, {t, 0, 0}, {1, 0, 0}});
            continue;
        }
        push(t);
    }
    for (double t : {(1 + t_tail) / 2, t_tail}) samples.push_back({t, {t, 0, 0}, {1, 0, 0}});
    return LongKnotCurve(std::move(samples));
}

struct RawIntersection {
    double s = 0, t = 0; // s < t
    int orient = 0;      // sgn det2[proj K'(s), proj K'(t)]
};

// Transverse self-intersections of the projection of K orthogonal to n.
std::vector<RawIntersection> find_intersections(const LongKnotCurve& k, const Vec3& n) {
    Vec3 e1, e2;
    frame_for(n, e1, e2);
    auto proj = [&](const Vec3& p) { return Vec2{dot(p, e1), dot(p, e2)}; };

    // Polyline through the sample points.
    std::vector<double> ts;
    for (const auto& s : k.samples()) ts.push_back(s.t);
    const std::size_t m = ts.size();
    std::vector<Vec2> q(m);
    for (std::size_t i = 0; i < m; ++i) q[i] = proj(k.point(ts[i]));

    auto segs_cross = [](const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
        double d1 = cross2(b - a, c - a), d2 = cross2(b - a, d - a);
        double d3 = cross2(d - c, a - c), d4 = cross2(d - c, b - c);
        return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
    };

    // Uniform grid over segment bounding boxes keeps the pair scan near
    // linear in the polyline size.
    double max_len = 1e-9;
    double minx = q[0].x, miny = q[0].y, maxx = q[0].x, maxy = q[0].y;
    for (std::size_t i = 0; i < m; ++i) {
        minx = std::min(minx, q[i].x);
        maxx = std::max(maxx, q[i].x);
        miny = std::min(miny, q[i].y);
        maxy = std::max(maxy, q[i].y);
        if (i + 1 < m) max_len = std::max(max_len, norm2d(q[i + 1] - q[i]));
    }
    double diag = std::hypot(maxx - minx, maxy - miny);
    double cell = std::max(diag / 96.0, 1e-6);
    (void)max_len;
    int nx = std::max(1, static_cast<int>((maxx - minx) / cell) + 1);
    int ny = std::max(1, static_cast<int>((maxy - miny) / cell) + 1);
    std::vector<std::vector<int>> grid(static_cast<std::size_t>(nx) * ny);
    auto cell_range = [&](std::size_t i, int& cx0, int& cx1, int& cy0, int& cy1) {
        double lx = std::min(q[i].x, q[i + 1].x), hx = std::max(q[i].x, q[i + 1].x);
        double ly = std::min(q[i].y, q[i + 1].y), hy = std::max(q[i].y, q[i + 1].y);
        cx0 = std::clamp(static_cast<int>((lx - minx) / cell), 0, nx - 1);
        cx1 = std::clamp(static_cast<int>((hx - minx) / cell), 0, nx - 1);
        cy0 = std::clamp(static_cast<int>((ly - miny) / cell), 0, ny - 1);
        cy1 = std::clamp(static_cast<int>((hy - miny) / cell), 0, ny - 1);
    };
    for (std::size_t i = 0; i + 1 < m; ++i) {
        int cx0, cx1, cy0, cy1;
        cell_range(i, cx0, cx1, cy0, cy1);
        for (int cx = cx0; cx <= cx1; ++cx)
            for (int cy = cy0; cy <= cy1; ++cy)
                grid[static_cast<std::size_t>(cx) * ny + cy].push_back(static_cast<int>(i));
    }

    std::vector<RawIntersection> out;
    double span = k.t_max() - k.t_min();
    std::set<std::pair<int, int>> tested;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        int cx0, cx1, cy0, cy1;
        cell_range(i, cx0, cx1, cy0, cy1);
        std::vector<int> cand;
        for (int cx = cx0; cx <= cx1; ++cx)
            for (int cy = cy0; cy <= cy1; ++cy)
                for (int j : grid[static_cast<std::size_t>(cx) * ny + cy])
                    if (j > static_cast<int>(i) + 1) cand.push_back(j);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (int j : cand) {
            if (!tested.insert({static_cast<int>(i), j}).second) continue;
            if (!segs_cross(q[i], q[i + 1], q[j], q[j + 1])) continue;

            double s = 0.5 * (ts[i] + ts[i + 1]);
            double t = 0.5 * (ts[static_cast<std::size_t>(j)] + ts[static_cast<std::size_t>(j) + 1]);
            bool converged = false;
            for (int it = 0; it < 60; ++it) {
                Vec3 dP = k.point(s) - k.point(t);
                Vec2 f{dot(dP, e1), dot(dP, e2)};
                Vec2 js = proj(k.deriv(s)), jt = proj(k.deriv(t));
                double den = cross2(js, jt * -1.0);
                if (std::abs(den) < 1e-14) break;
                // Solve [js, -jt] [ds, dt]^T = -f
                double dss = (-f.x * (-jt.y) - (-jt.x) * (-f.y)) / den;
                double dtt = (js.x * (-f.y) - (-f.x) * js.y) / den;
                s += dss;
                t += dtt;
                if (std::abs(dss) + std::abs(dtt) < 1e-13) {
                    converged = true;
                    break;
                }
            }
            if (!converged) continue;
            if (s > t) std::swap(s, t);
            if (t - s < 1e-4 * span) continue;
            Vec2 ds = proj(k.deriv(s)), dt2 = proj(k.deriv(t));
            double cr = cross2(ds, dt2) / (norm2d(ds) * norm2d(dt2));
            if (std::abs(cr) < 1e-3)
                throw Error(ErrorCode::NotEmbeddable, "tangential crossing in projection");
            bool dup = false;
            for (const auto& r : out)
                if (std::abs(r.s - s) < 1e-6 * span && std::abs(r.t - t) < 1e-6 * span) dup = true;
            if (!dup) out.push_back(RawIntersection{s, t, cr > 0 ? 1 : -1});
        }
    }
    std::sort(out.begin(), out.end(), [](const RawIntersection& a, const RawIntersection& b) {
        return std::tie(a.s, a.t) < std::tie(b.s, b.t);
    });
    return out;
}

} // namespace

std::vector<ProjCrossing> find_crossings(const LongKnotCurve& k, const Vec3& n) {
    Vec3 nn = unit(n);
    std::vector<ProjCrossing> out;
    for (const auto& r : find_intersections(k, nn)) {
        double zs = dot(k.point(r.s), nn), zt = dot(k.point(r.t), nn);
        if (std::abs(zs - zt) < 1e-9)
            throw Error(ErrorCode::NotEmbeddable,
                        "strands meet in space at a crossing (s = " + std::to_string(r.s) +
                            ", t = " + std::to_string(r.t) + ")");
        ProjCrossing c;
        c.under_t = zs < zt ? r.s : r.t;
        c.over_t = zs < zt ? r.t : r.s;
        c.separation = std::abs(zs - zt);
        // r.orient is det2 in (s, t) order; crossing sign is det2 in
        // (over, under) order.
        c.sign = (zs < zt ? -r.orient : r.orient);
        out.push_back(c);
    }
    return out;
}

DoubleGaussDiagram diagram_from_curve(const LongKnotCurve& k, const Vec3& n) {
    auto crossings = find_crossings(k, n);
    std::vector<std::pair<double, int>> passages; // (param, crossing index)
    for (std::size_t i = 0; i < crossings.size(); ++i) {
        passages.push_back({crossings[i].under_t, static_cast<int>(i)});
        passages.push_back({crossings[i].over_t, static_cast<int>(i)});
    }
    std::sort(passages.begin(), passages.end());

    MultiGaussDiagram g;
    std::map<int, std::pair<int, int>> ends; // crossing -> (under pos, over pos)
    for (std::size_t pos = 0; pos < passages.size(); ++pos) {
        const auto& [t, ci] = passages[pos];
        bool is_under = std::abs(t - crossings[ci].under_t) < 1e-12;
        g.passages.push_back(
            Passage{static_cast<int>(pos), std::to_string(ci + 1), is_under ? 2 : 1});
        if (is_under)
            ends[ci].first = static_cast<int>(pos);
        else
            ends[ci].second = static_cast<int>(pos);
    }
    for (std::size_t i = 0; i < crossings.size(); ++i)
        g.chords.push_back(Chord{ends[static_cast<int>(i)].first,
                                 ends[static_cast<int>(i)].second, crossings[i].sign});
    std::sort(g.chords.begin(), g.chords.end(), [](const Chord& a, const Chord& b) {
        return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
    });
    return DoubleGaussDiagram(std::move(g));
}

namespace {

// Shared bridge construction: planar path plus +-h bumps at crossing params.
struct Bridge {
    double center;
    double halfwidth;
    double height; // signed
};

double bridges_z(const std::vector<Bridge>& bridges, double t) {
    double z = 0;
    for (const auto& b : bridges) z += b.height * bump01((t - b.center) / b.halfwidth);
    return z;
}

std::vector<Bridge> make_bridges(const std::vector<std::pair<double, double>>& passages,
                                 double h) {
    // passages: (param, signed height direction +1 over / -1 under)
    std::vector<double> ts;
    for (auto& [t, dir] : passages) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
    std::vector<Bridge> out;
    for (auto& [t, dir] : passages) {
        double gap = 1e9;
        for (double o : ts)
            if (std::abs(o - t) > 1e-12) gap = std::min(gap, std::abs(o - t));
        gap = std::min(gap, std::min(t - (-1.0), 1.0 - t) * 1.2);
        out.push_back(Bridge{t, 0.42 * gap, dir * h});
    }
    return out;
}

} // namespace

LongKnotCurve curve_from_diagram(const DoubleGaussDiagram& dg, const PlanarLayout& layout,
                                 double bridge_height) {
    const MultiGaussDiagram& g = dg.get();
    if (layout.waypoints.size() < 2)
        throw Error(ErrorCode::NotEmbeddable, "layout needs waypoints");
    if (norm2d(layout.waypoints.front() - Vec2{-1, 0}) > 1e-9 ||
        norm2d(layout.waypoints.back() - Vec2{1, 0}) > 1e-9)
        throw Error(ErrorCode::NotEmbeddable, "layout must start at (-1,0) and end at (1,0)");

    Vec2 tan{1, 0};
    Spline2 spline(chordlength_params(layout.waypoints, -1.0, 1.0), layout.waypoints, &tan, &tan);

    auto planar_pos = [&](double t) {
        Vec2 p = spline.eval(t);
        return Vec3{p.x, p.y, 0};
    };
    LongKnotCurve planar = assemble(planar_pos, 2200, 2.5);
    auto raw = find_intersections(planar, Vec3{0, 0, 1});

    if (raw.size() != g.chords.size())
        throw Error(ErrorCode::NotEmbeddable,
                    "layout has " + std::to_string(raw.size()) + " crossings, diagram needs " +
                        std::to_string(g.chords.size()));

    // Rank the 2n passage parameters; the pairing must match the diagram.
    std::vector<double> params;
    for (const auto& r : raw) {
        params.push_back(r.s);
        params.push_back(r.t);
    }
    std::sort(params.begin(), params.end());
    auto rank = [&](double t) {
        return static_cast<int>(std::lower_bound(params.begin(), params.end(), t) - params.begin());
    };

    std::vector<std::pair<double, double>> bridge_spec; // (param, +-1)
    for (const auto& r : raw) {
        int a = rank(r.s), b = rank(r.t);
        const Chord* chord = nullptr;
        for (const auto& c : g.chords)
            if ((c.tail == a && c.head == b) || (c.tail == b && c.head == a)) chord = &c;
        if (!chord)
            throw Error(ErrorCode::NotEmbeddable, "layout crossing pattern does not realize the diagram");
        double over_t = chord->head == a ? r.s : r.t;
        double under_t = chord->head == a ? r.t : r.s;
        // Crossing sign determined by the projection plus the over choice.
        int sign = over_t == r.s ? r.orient : -r.orient;
        if (sign != chord->sign)
            throw Error(ErrorCode::NotEmbeddable, "layout realizes the wrong crossing sign");
        bridge_spec.push_back({over_t, 1.0});
        bridge_spec.push_back({under_t, -1.0});
    }

    auto bridges = make_bridges(bridge_spec, bridge_height);
    auto pos = [&](double t) {
        Vec2 p = spline.eval(t);
        return Vec3{p.x, p.y, bridges_z(bridges, t)};
    };
    LongKnotCurve k = assemble(pos, 2200, 2.5);
    k.check_standard();
    k.check_embedded();
    try {
        k.check_in_kn(Vec3{0, 0, 1}, 0.02);
    } catch (const Error&) {
        throw Error(ErrorCode::TangentViolation, "bridges too steep for this layout");
    }
    return k;
}

LongKnotCurve builtin_trivial() {
    std::vector<CurveSample> s;
    for (double t : {-2.5, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.5})
        s.push_back({t, {t, 0, 0}, {1, 0, 0}});
    return LongKnotCurve(std::move(s));
}

// ---- trefoil --------------------------------------------------------------
//
// Plane projection from the degree (3,4) polynomial immersion
// (t^3-3t, t^4-4t^2), which self-intersects exactly three times, scaled
// anisotropically and closed off by routed tails that provably avoid the
// body. Over/under assignment alternates along the strand; the variant with
// all-positive crossings is selected.

namespace {

struct TrefoilPath {
    double sx, sy, c, body_half; // body on [-body_half, body_half]
    Spline2 entry, exit;

    TrefoilPath()
        : sx(1.8 / 13.552), sy(2.0 / 30.1056), c(2.8), body_half(0.7),
          entry(make_entry()), exit(make_exit()) {}

    Vec2 body(double tstar) const {
        return {sx * (tstar * tstar * tstar - 3 * tstar),
                sy * (tstar * tstar * tstar * tstar - 4 * tstar * tstar)};
    }
    Vec2 body_vel_t(double tstar) const { // d/dt with t* = (c/body_half) t
        double k = c / body_half;
        return {sx * (3 * tstar * tstar - 3) * k, sy * (4 * tstar * tstar * tstar - 8 * tstar) * k};
    }

    Spline2 make_entry() {
        std::vector<Vec2> w = {{-1.00, 0.0}, {-0.90, 0.18}, {-1.35, 0.95},
                               {-1.95, 1.30}, {-1.93, 2.35}, {-1.80, 2.00}};
        Vec2 t0{1, 0};
        Vec2 t1 = Vec2{10.90, -17.38};
        return Spline2(chordlength_params(w, -1.0, -0.7), w, &t0, &t1);
    }
    Spline2 make_exit() {
        std::vector<Vec2> w = {{1.80, 2.00}, {1.93, 2.35}, {1.95, 1.30},
                               {1.35, 0.95}, {0.90, 0.18}, {1.00, 0.0}};
        Vec2 t0{10.90, 17.38};
        Vec2 t1{1, 0};
        return Spline2(chordlength_params(w, 0.7, 1.0), w, &t0, &t1);
    }

    Vec2 eval(double t) const {
        if (t < -body_half) return entry.eval(t);
        if (t > body_half) return exit.eval(t);
        return body(t * c / body_half);
    }
};

} // namespace

LongKnotCurve builtin_trefoil(double h) {
    static const TrefoilPath path;
    const double r3 = std::sqrt(3.0);
    const double ta = std::sqrt(2.0 + r3), tb = std::sqrt(2.0 - r3);
    // Crossing parameter pairs of the projection, in t* units.
    const double scale = path.body_half / path.c;
    std::vector<std::pair<double, double>> pairs = {
        {-ta * scale, tb * scale}, {-r3 * scale, r3 * scale}, {-tb * scale, ta * scale}};

    std::vector<double> passage_t;
    for (auto& [a, b] : pairs) {
        passage_t.push_back(a);
        passage_t.push_back(b);
    }
    std::sort(passage_t.begin(), passage_t.end());

    // Alternating over/under; pick the choice with all positive signs.
    auto sign_with = [&](bool over_first_passage) {
        // Returns the sign of each crossing for the alternating assignment in
        // which the first passage along the strand is an over-passage.
        std::map<double, bool> over;
        for (std::size_t i = 0; i < passage_t.size(); ++i)
            over[passage_t[i]] = (i % 2 == 0) == over_first_passage;
        std::vector<int> signs;
        for (auto& [a, b] : pairs) {
            double to = over[a] ? a : b;
            double tu = over[a] ? b : a;
            Vec2 d_over = path.body_vel_t(to / scale);
            Vec2 d_under = path.body_vel_t(tu / scale);
            signs.push_back(cross2(d_over, d_under) > 0 ? 1 : -1);
        }
        return signs;
    };
    bool over_first = true;
    {
        auto s = sign_with(true);
        if (!(s[0] == 1 && s[1] == 1 && s[2] == 1)) over_first = false;
    }

    std::vector<std::pair<double, double>> bridge_spec;
    for (std::size_t i = 0; i < passage_t.size(); ++i) {
        bool is_over = (i % 2 == 0) == over_first;
        bridge_spec.push_back({passage_t[i], is_over ? 1.0 : -1.0});
    }
    auto bridges = make_bridges(bridge_spec, h);

    auto pos = [&](double t) {
        Vec2 p = path.eval(t);
        return Vec3{p.x, p.y, bridges_z(bridges, t)};
    };
    return assemble(pos, 5200, 2.5);
}

PlanarLayout builtin_trefoil_layout() {
    static const TrefoilPath path;
    PlanarLayout layout;
    const int m = 160;
    for (int i = 0; i <= m; ++i) {
        double t = -1.0 + 2.0 * i / m;
        layout.waypoints.push_back(path.eval(t));
    }
    layout.waypoints.front() = {-1, 0};
    layout.waypoints.back() = {1, 0};
    return layout;
}

// ---- petal curves ----------------------------------------------------------
//
// The rose r = cos(n theta), theta in [gamma, pi - gamma], visits the center
// n times; visit m carries the strand of level s_m at height proportional to
// its level. With perturb set, visit m is displaced off-center exactly as in
// pedal_geometry, resolving the uebercrossing into n(n-1)/2 double crossings.

LongKnotCurve petal_curve(const std::vector<int>& perm_levels, double h, bool perturb,
                          std::uint64_t seed) {
    const int n = static_cast<int>(perm_levels.size());
    if (n < 3 || perm_levels.front() != 1)
        throw Error(ErrorCode::InvalidPermutation, "petal curve needs a pedal permutation");

    std::vector<int> s(perm_levels.begin() + 1, perm_levels.end());
    s.push_back(1);

    const double gamma = 0.10;
    const double th_lo = gamma, th_hi = kPi - gamma;

    std::vector<double> theta_m(n), z_m(n);
    std::vector<Vec2> dir_m(n), norm_m(n);
    std::vector<double> offset_m(n, 0.0);
    for (int m = 0; m < n; ++m) {
        theta_m[m] = (2 * m + 1) * kPi / (2 * n);
        z_m[m] = h * (n + 1 - 2 * s[m]) / static_cast<double>(n - 1);
        double sgn = (m % 2 == 0) ? -1.0 : 1.0;
        dir_m[m] = {sgn * std::cos(theta_m[m]), sgn * std::sin(theta_m[m])};
        norm_m[m] = {-dir_m[m].y, dir_m[m].x};
        if (perturb) {
            SampleRng rng(seed, static_cast<std::uint64_t>(m));
            offset_m[m] = (rng.next_double() - 0.5) * 0.12;
        }
    }

    // Plateau widths shrink at the first and last visit so the supports end
    // strictly inside the kept arc (the tails are exactly planar).
    std::vector<double> w_th(n, 0.45 * kPi / n);
    w_th.front() = std::min(w_th.front(), theta_m.front() - th_lo - 0.01);
    w_th.back() = std::min(w_th.back(), th_hi - theta_m.back() - 0.01);
    // Inside each visit plateau the strand is blended onto its exact tangent
    // line (speed n, direction dir_m, offset along norm_m), so the crossing
    // order along every strand coincides with the straight-line arrangement
    // used by the combinatorial perturbation.
    auto rose = [&](double th) {
        double r = std::cos(n * th);
        Vec2 p{r * std::cos(th), r * std::sin(th)};
        double z = 0;
        for (int m = 0; m < n; ++m) {
            double u = (th - theta_m[m]) / w_th[m];
            if (std::abs(u) < 1.0) {
                double pl = plateau(u, 0.35);
                z += z_m[m] * pl;
                Vec2 line = dir_m[m] * (n * (th - theta_m[m])) + norm_m[m] * offset_m[m];
                p = p + (line - p) * pl;
            }
        }
        return Vec3{p.x, p.y, z};
    };

    // Entry sweeps over the bouquet and descends through the empty ray at
    // angle pi/n; exit leaves through the gap left by the cut petal.
    Vec3 start = rose(th_lo), end = rose(th_hi);
    const double dh = 1e-6;
    Vec3 start_d = (rose(th_lo + dh) - rose(th_lo - dh)) / (2 * dh);
    Vec3 end_d = (rose(th_hi + dh) - rose(th_hi - dh)) / (2 * dh);

    auto polar = [](double deg, double r) {
        double a = deg * kPi / 180.0;
        return Vec2{r * std::cos(a), r * std::sin(a)};
    };
    double corridor = 180.0 / n;
    std::vector<Vec2> we = {{-1.0, 0.0},
                            polar(155, 1.32),
                            polar(112, 1.35),
                            polar(0.5 * (112 + corridor), 1.35),
                            polar(corridor, 1.12),
                            {0.93, 0.16},
                            {start.x + 0.15, start.y + 0.02},
                            {start.x, start.y}};
    std::vector<Vec2> wx = {{end.x, end.y}, {end.x + 0.15, end.y + 0.01}, {0.97, -0.02}, {1.0, 0.0}};

    // Parameter spans proportional to arc length keep spline speeds matched
    // to the prescribed junction tangents.
    auto chord_total = [](const std::vector<Vec2>& w) {
        double total = 0;
        for (std::size_t i = 1; i < w.size(); ++i) total += norm2d(w[i] - w[i - 1]);
        return total;
    };
    double len_rose = 0;
    {
        const int steps = 4000;
        Vec3 prev = rose(th_lo);
        for (int i = 1; i <= steps; ++i) {
            Vec3 cur = rose(th_lo + (th_hi - th_lo) * i / steps);
            len_rose += norm(cur - prev);
            prev = cur;
        }
    }
    double len_entry = chord_total(we), len_exit = chord_total(wx);
    double len_total = len_entry + len_rose + len_exit;
    double t_a = -1.0 + 2.0 * len_entry / len_total;
    double t_b = t_a + 2.0 * len_rose / len_total;
    double th_rate = (th_hi - th_lo) / (t_b - t_a);
    auto theta_of = [=](double t) { return th_lo + (t - t_a) * th_rate; };

    Vec2 te0{1, 0};
    Vec2 te1{start_d.x * th_rate, start_d.y * th_rate};
    Spline2 entry(chordlength_params(we, -1.0, t_a), we, &te0, &te1);
    Vec2 tx0{end_d.x * th_rate, end_d.y * th_rate};
    Vec2 tx1{1, 0};
    Spline2 exit(chordlength_params(wx, t_b, 1.0), wx, &tx0, &tx1);

    auto pos = [&](double t) {
        if (t < t_a) {
            Vec2 p = entry.eval(t);
            return Vec3{p.x, p.y, 0};
        }
        if (t > t_b) {
            Vec2 p = exit.eval(t);
            return Vec3{p.x, p.y, 0};
        }
        return rose(theta_of(t));
    };
    return assemble(pos, 4600 + 600 * n, 2.5);
}

LongKnotCurve builtin_figure8(double h) {
    return petal_curve({1, 3, 5, 2, 7, 4, 6}, h, true, 1);
}

std::pair<ClosedCurve, ClosedCurve> builtin_hopf() {
    const int m = 256;
    std::vector<Vec3> a(m), b(m);
    for (int i = 0; i < m; ++i) {
        double u = 2 * kPi * i / m;
        a[i] = {std::cos(u), std::sin(u), 0};
        b[i] = {1 + std::cos(u), 0, -std::sin(u)};
    }
    return {ClosedCurve(a, 2 * kPi), ClosedCurve(b, 2 * kPi)};
}

std::pair<ClosedCurve, ClosedCurve> builtin_distant_circles() {
    const int m = 256;
    std::vector<Vec3> a(m), b(m);
    for (int i = 0; i < m; ++i) {
        double u = 2 * kPi * i / m;
        a[i] = {std::cos(u), std::sin(u), 0};
        b[i] = {10 + std::cos(u), 0, -std::sin(u)};
    }
    return {ClosedCurve(a, 2 * kPi), ClosedCurve(b, 2 * kPi)};
}

} // namespace casson
