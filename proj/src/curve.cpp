#include "casson/curve.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace casson {

using nlohmann::json;

namespace {

// Cubic Hermite position and derivative on one segment.
Vec3 hermite(const CurveSample& a, const CurveSample& b, double t) {
    double dt = b.t - a.t;
    double u = (t - a.t) / dt;
    double u2 = u * u, u3 = u2 * u;
    double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    return a.p * h00 + a.d * (h10 * dt) + b.p * h01 + b.d * (h11 * dt);
}

Vec3 hermite_deriv(const CurveSample& a, const CurveSample& b, double t) {
    double dt = b.t - a.t;
    double u = (t - a.t) / dt;
    double u2 = u * u;
    double g00 = (6 * u2 - 6 * u) / dt, g10 = 3 * u2 - 4 * u + 1;
    double g01 = (-6 * u2 + 6 * u) / dt, g11 = 3 * u2 - 2 * u;
    return a.p * g00 + a.d * g10 + b.p * g01 + b.d * g11;
}

} // namespace

LongKnotCurve::LongKnotCurve(std::vector<CurveSample> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2)
        throw Error(ErrorCode::InvalidDiagram, "curve needs at least two samples");
    for (std::size_t i = 0; i + 1 < samples_.size(); ++i)
        if (!(samples_[i].t < samples_[i + 1].t))
            throw Error(ErrorCode::InvalidDiagram, "curve samples must be strictly increasing in t");
}

std::size_t LongKnotCurve::segment(double t) const {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const CurveSample& s) { return v < s.t; });
    std::size_t i = static_cast<std::size_t>(it - samples_.begin());
    if (i == 0) return 0;
    if (i >= samples_.size()) return samples_.size() - 2;
    return i - 1;
}

Vec3 LongKnotCurve::point(double t) const {
    if (t <= samples_.front().t || t >= samples_.back().t) return {t, 0, 0};
    std::size_t i = segment(t);
    return hermite(samples_[i], samples_[i + 1], t);
}

Vec3 LongKnotCurve::deriv(double t) const {
    if (t <= samples_.front().t || t >= samples_.back().t) return {1, 0, 0};
    std::size_t i = segment(t);
    return hermite_deriv(samples_[i], samples_[i + 1], t);
}

void LongKnotCurve::bounding_box(Vec3& lo, Vec3& hi) const {
    lo = hi = samples_.front().p;
    for (const auto& s : samples_) {
        lo.x = std::min(lo.x, s.p.x);
        lo.y = std::min(lo.y, s.p.y);
        lo.z = std::min(lo.z, s.p.z);
        hi.x = std::max(hi.x, s.p.x);
        hi.y = std::max(hi.y, s.p.y);
        hi.z = std::max(hi.z, s.p.z);
    }
}

void LongKnotCurve::check_standard() const {
    if (t_min() > -1 || t_max() < 1)
        throw Error(ErrorCode::InvalidDiagram, "curve must be sampled across [-1, 1]");
    for (const auto& s : samples_) {
        if (std::abs(s.t) < 1) continue;
        Vec3 axis{s.t, 0, 0};
        if (norm(s.p - axis) > 1e-9 || norm(s.d - Vec3{1, 0, 0}) > 1e-9)
            throw Error(ErrorCode::InvalidDiagram,
                        "curve is not standard outside [-1, 1] at t = " + std::to_string(s.t));
    }
}

void LongKnotCurve::check_embedded(double min_sep) const {
    for (std::size_t i = 0; i < samples_.size(); ++i)
        for (std::size_t j = i + 2; j < samples_.size(); ++j) {
            double d = norm(samples_[i].p - samples_[j].p);
            if (d <= min_sep)
                throw Error(ErrorCode::NotEmbeddable,
                            "non-adjacent samples closer than " + std::to_string(min_sep) +
                                " at t = " + std::to_string(samples_[i].t) + ", " +
                                std::to_string(samples_[j].t));
        }
}

void LongKnotCurve::check_in_kn(const Vec3& n, double eps) const {
    Vec3 nn = unit(n);
    for (const auto& s : samples_) {
        double a = angle_between(s.d, nn);
        double margin = std::min(a, std::acos(-1.0) - a);
        if (margin <= eps)
            throw Error(ErrorCode::NotInKN,
                        "tangent within bump radius of +-N at t = " + std::to_string(s.t));
    }
}

ClosedCurve::ClosedCurve(std::vector<Vec3> points, double period) : period_(period) {
    const std::size_t m = points.size();
    if (m < 8) throw Error(ErrorCode::InvalidDiagram, "closed curve needs at least 8 points");
    samples_.resize(m);
    double h = period_ / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        samples_[i].t = h * static_cast<double>(i);
        samples_[i].p = points[i];
        samples_[i].d = (points[(i + 1) % m] - points[(i + m - 1) % m]) / (2 * h);
    }
}

Vec3 ClosedCurve::point(double t) const {
    double w = std::fmod(t, period_);
    if (w < 0) w += period_;
    const std::size_t m = samples_.size();
    double h = period_ / static_cast<double>(m);
    std::size_t i = std::min(static_cast<std::size_t>(w / h), m - 1);
    CurveSample a = samples_[i];
    CurveSample b = samples_[(i + 1) % m];
    b.t = a.t + h;
    return hermite(a, b, w);
}

Vec3 ClosedCurve::deriv(double t) const {
    double w = std::fmod(t, period_);
    if (w < 0) w += period_;
    const std::size_t m = samples_.size();
    double h = period_ / static_cast<double>(m);
    std::size_t i = std::min(static_cast<std::size_t>(w / h), m - 1);
    CurveSample a = samples_[i];
    CurveSample b = samples_[(i + 1) % m];
    b.t = a.t + h;
    return hermite_deriv(a, b, w);
}

Vec3 gauss_direction(const LongKnotCurve& k, double s, double t) {
    Vec3 d = k.point(t) - k.point(s);
    double n = norm(d);
    if (n < 1e-12)
        throw Error(ErrorCode::CoincidentPoints,
                    "K(s) and K(t) coincide at s = " + std::to_string(s) +
                        ", t = " + std::to_string(t));
    return d / n;
}

LongKnotCurve load_curve_json(const std::string& doc) {
    json j;
    try {
        j = json::parse(doc);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaError, e.what());
    }
    if (!j.is_object() || !j.contains("samples") || !j["samples"].is_array())
        throw Error(ErrorCode::SchemaError, "curve document needs a 'samples' array");
    std::vector<double> ts;
    std::vector<Vec3> ps;
    for (const auto& sj : j["samples"]) {
        if (!sj.contains("t") || !sj.contains("p") || !sj["p"].is_array() || sj["p"].size() != 3)
            throw Error(ErrorCode::SchemaError, "curve sample needs t and p:[x,y,z]");
        ts.push_back(sj["t"].get<double>());
        ps.push_back(Vec3{sj["p"][0].get<double>(), sj["p"][1].get<double>(), sj["p"][2].get<double>()});
    }
    if (ts.size() < 2) throw Error(ErrorCode::SchemaError, "curve needs at least two samples");
    std::vector<CurveSample> samples(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        samples[i].t = ts[i];
        samples[i].p = ps[i];
        std::size_t lo = i == 0 ? 0 : i - 1;
        std::size_t hi = i + 1 == ts.size() ? i : i + 1;
        samples[i].d = (ps[hi] - ps[lo]) / (ts[hi] - ts[lo]);
    }
    return LongKnotCurve(std::move(samples));
}

std::string curve_to_json(const LongKnotCurve& k) {
    json arr = json::array();
    for (const auto& s : k.samples()) {
        json sj;
        sj["t"] = s.t;
        sj["p"] = {s.p.x, s.p.y, s.p.z};
        arr.push_back(sj);
    }
    json out;
    out["samples"] = arr;
    return out.dump();
}

} // namespace casson
