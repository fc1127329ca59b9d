#include "casson/integral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace casson {

namespace {

const double kPi = std::acos(-1.0);
const double kFourPi = 4.0 * kPi;

void frame_for(const Vec3& n, Vec3& e1, Vec3& e2) {
    Vec3 nn = unit(n);
    Vec3 seed = std::abs(nn.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = unit(cross(seed, nn));
    e2 = cross(nn, e1);
}

struct Interval {
    double lo = 0, hi = 0;
    double len() const { return hi - lo; }
    bool contains(double t) const { return t >= lo && t <= hi; }
};

// Can x1 < x2 < ... be chosen with xi in box[i]?
bool order_feasible(const std::vector<Interval>& box) {
    double t = -1e300;
    for (const auto& iv : box) {
        t = std::max(t, iv.lo);
        if (t >= iv.hi) return false;
    }
    return true;
}

} // namespace

double gauss_density(const Vec3& ps, const Vec3& ds, const Vec3& pt, const Vec3& dt) {
    Vec3 diff = ps - pt;
    double r = norm(diff);
    return det3(ds, dt, diff) / (kFourPi * r * r * r);
}

// ---- localized linking number ---------------------------------------------

namespace {

struct TorusPoint {
    double s, t;
};

// Points where the inter-curve Gauss direction hits N, by coarse scan plus
// Newton refinement in the frame transverse to N.
std::vector<TorusPoint> lk_preimages(const ClosedCurve& l1, const ClosedCurve& l2, const Vec3& n) {
    Vec3 e1, e2;
    frame_for(n, e1, e2);
    const double p1 = l1.period(), p2 = l2.period();
    const int grid = 160;
    std::vector<TorusPoint> roots;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double s = p1 * (i + 0.5) / grid;
            double t = p2 * (j + 0.5) / grid;
            Vec3 d = l2.point(t) - l1.point(s);
            if (dot(d, n) <= 0) continue;
            if (angle_between(d, n) > 2.5 * kPi * 2 / grid + 0.35) continue;
            // Newton on the transverse components of the chord.
            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                Vec3 diff = l2.point(t) - l1.point(s);
                double fx = dot(diff, e1), fy = dot(diff, e2);
                Vec3 d1 = l1.deriv(s), d2 = l2.deriv(t);
                double a = -dot(d1, e1), b = dot(d2, e1);
                double c = -dot(d1, e2), d = dot(d2, e2);
                double den = a * d - b * c;
                if (std::abs(den) < 1e-14) break;
                double dss = (-fx * d + b * fy) / den;
                double dtt = (-a * fy + fx * c) / den;
                s += dss;
                t += dtt;
                if (std::abs(dss) + std::abs(dtt) < 1e-13) {
                    ok = true;
                    break;
                }
            }
            if (!ok) continue;
            Vec3 diff = l2.point(t) - l1.point(s);
            if (dot(diff, n) <= 0) continue;
            if (std::abs(dot(diff, e1)) + std::abs(dot(diff, e2)) > 1e-9 * norm(diff)) continue;
            double sm = std::fmod(s, p1);
            if (sm < 0) sm += p1;
            double tm = std::fmod(t, p2);
            if (tm < 0) tm += p2;
            bool dup = false;
            for (const auto& r : roots) {
                double dsr = std::min(std::abs(r.s - sm), p1 - std::abs(r.s - sm));
                double dtr = std::min(std::abs(r.t - tm), p2 - std::abs(r.t - tm));
                if (dsr < 1e-4 * p1 && dtr < 1e-4 * p2) dup = true;
            }
            if (!dup) roots.push_back(TorusPoint{sm, tm});
        }
    return roots;
}

double lk_box_radius(const ClosedCurve& l1, const ClosedCurve& l2, const BumpForm& b,
                     const TorusPoint& c) {
    const Vec3 n = b.center();
    double sep = norm(l2.point(c.t) - l1.point(c.s));
    double speed = std::max(norm(l1.deriv(c.s)), norm(l2.deriv(c.t)));
    double r = 1.2 * b.eps() * sep / speed;
    for (int grow = 0; grow < 48; ++grow) {
        bool clear = true;
        for (int i = 0; i < 64 && clear; ++i) {
            double u = -1.0 + 2.0 * i / 63.0;
            for (auto [ds, dt] : {std::pair{u, -1.0}, {u, 1.0}, {-1.0, u}, {1.0, u}}) {
                Vec3 d = l2.point(c.t + r * dt) - l1.point(c.s + r * ds);
                if (angle_between(d, n) <= 1.05 * b.eps()) {
                    clear = false;
                    break;
                }
            }
        }
        if (clear) return r;
        r *= 1.3;
    }
    return r;
}

} // namespace

long long lk_crossing_count(const ClosedCurve& l1, const ClosedCurve& l2, const Vec3& n) {
    Vec3 e1, e2;
    frame_for(n, e1, e2);
    long long total = 0;
    for (const auto& c : lk_preimages(l1, l2, n)) {
        Vec3 d1 = l1.deriv(c.s), d2 = l2.deriv(c.t);
        // Crossing sign = sign of det D(h12) at the preimage of N, which is
        // det2 of (over tangent, under tangent) in the (e1, e2) frame.
        double det = dot(d2, e1) * dot(d1, e2) - dot(d2, e2) * dot(d1, e1);
        total += det > 0 ? 1 : -1;
    }
    return total;
}

McEstimate lk_localized(const ClosedCurve& l1, const ClosedCurve& l2, const BumpForm& b,
                        const McConfig& cfg) {
    for (const auto& sa : l1.samples())
        for (const auto& sb : l2.samples())
            if (norm(sa.p - sb.p) < 1e-6)
                throw Error(ErrorCode::CurvesIntersect, "curves intersect");

    const double p1 = l1.period(), p2 = l2.period();
    auto roots = lk_preimages(l1, l2, b.center());

    struct Box {
        Interval s, t;
    };
    std::vector<Box> boxes;
    double min_root_gap = std::min(p1, p2);
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            double ds = std::min(std::abs(roots[i].s - roots[j].s),
                                 p1 - std::abs(roots[i].s - roots[j].s));
            double dt = std::min(std::abs(roots[i].t - roots[j].t),
                                 p2 - std::abs(roots[i].t - roots[j].t));
            min_root_gap = std::min(min_root_gap, std::max(ds, dt));
        }
    for (const auto& r : roots) {
        double rad = std::min(lk_box_radius(l1, l2, b, r), min_root_gap / 3.0);
        boxes.push_back(Box{{r.s - rad, r.s + rad}, {r.t - rad, r.t + rad}});
    }

    auto integrand = [&](double s, double t) {
        Vec3 dir = l2.point(t) - l1.point(s);
        double f = b.eval(unit(dir));
        if (f == 0.0) return 0.0;
        return f * gauss_density(l1.point(s), l1.deriv(s), l2.point(t), l2.deriv(t));
    };

    std::vector<McPiece> pieces;
    for (const auto& box : boxes) {
        double vol = box.s.len() * box.t.len();
        pieces.push_back(McPiece{[&, box, vol](SampleRng& rng) {
                                     double s = rng.next_in(box.s.lo, box.s.hi);
                                     double t = rng.next_in(box.t.lo, box.t.hi);
                                     return vol * integrand(s, t);
                                 },
                                 3.0});
    }
    // Complement of the boxes over the full torus.
    pieces.push_back(McPiece{[&, boxes](SampleRng& rng) {
                                 double s = rng.next_in(0, p1);
                                 double t = rng.next_in(0, p2);
                                 for (const auto& box : boxes) {
                                     // Wrapped membership.
                                     double ds = s, dt = t;
                                     auto inside = [](const Interval& iv, double v, double period) {
                                         for (double off : {-period, 0.0, period})
                                             if (iv.contains(v + off)) return true;
                                         return false;
                                     };
                                     if (inside(box.s, ds, p1) && inside(box.t, dt, p2)) return 0.0;
                                 }
                                 return p1 * p2 * integrand(s, t);
                             },
                             1.0});

    return run_pieces(pieces, cfg);
}

// ---- localized Casson integral --------------------------------------------

namespace {

struct CrossingBoxes {
    std::vector<ProjCrossing> crossings;
    std::vector<Interval> under, over; // index-aligned with crossings
};

double knot_box_radius(const LongKnotCurve& k, const BumpForm& b, const ProjCrossing& c,
                       double cap_radius, int depth_in) {
    const int depth = std::clamp(depth_in, 0, 4);
    double speed = std::max(norm(k.deriv(c.under_t)), norm(k.deriv(c.over_t)));
    double r = 1.2 * b.eps() * c.separation / speed;
    r = std::min(r, cap_radius);
    const Vec3 n = b.center();
    const int ring = 64 << depth;
    for (int grow = 0; grow < 48 + 8 * depth; ++grow) {
        bool clear = true;
        for (int i = 0; i < ring && clear; ++i) {
            double u = -1.0 + 2.0 * i / (ring - 1.0);
            for (auto [ds, dt] : {std::pair{u, -1.0}, {u, 1.0}, {-1.0, u}, {1.0, u}}) {
                Vec3 d = k.point(c.over_t + r * dt) - k.point(c.under_t + r * ds);
                if (norm(d) > 1e-12 && angle_between(d, n) <= 1.05 * b.eps()) {
                    clear = false;
                    break;
                }
            }
        }
        if (clear) return r;
        if (r >= cap_radius) return cap_radius;
        r = std::min(1.3 * r, cap_radius);
    }
    return r;
}

CrossingBoxes make_crossing_boxes(const LongKnotCurve& k, const BumpForm& b, int depth) {
    CrossingBoxes cb;
    cb.crossings = find_crossings(k, b.center());
    // Growth stops when the box boundary leaves the cap, which only the
    // crossing's own alignment controls; overlapping neighborhoods are
    // merged downstream, so no distance-based cap is needed to keep strata
    // disjoint -- and capping would push support into the complement.
    for (const auto& c : cb.crossings) {
        double r = knot_box_radius(k, b, c, 0.1, depth);
        cb.under.push_back(Interval{c.under_t - r, c.under_t + r});
        cb.over.push_back(Interval{c.over_t - r, c.over_t + r});
    }
    return cb;
}

// Merge into disjoint sorted intervals.
std::vector<Interval> merged_intervals(const CrossingBoxes& cb) {
    std::vector<Interval> ivs;
    for (std::size_t i = 0; i < cb.crossings.size(); ++i) {
        ivs.push_back(cb.under[i]);
        ivs.push_back(cb.over[i]);
    }
    std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const auto& iv : ivs) {
        if (!out.empty() && iv.lo <= out.back().hi + 1e-12)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

} // namespace

McEstimate term_chords(const LongKnotCurve& k, const BumpForm& b, const McConfig& cfg) {
    k.check_in_kn(b.center(), b.eps());
    const double a = -1.0 - cfg.padding, z = 1.0 + cfg.padding;
    auto cb = make_crossing_boxes(k, b, cfg.stratification_depth);

    struct P4 {
        Vec3 p;
        Vec3 d;
    };
    auto at = [&](double t) { return P4{k.point(t), k.deriv(t)}; };

    auto integrand = [&](double x1, double x2, double x3, double x4) {
        P4 a1 = at(x1), a2 = at(x2), a3 = at(x3), a4 = at(x4);
        Vec3 d13 = a3.p - a1.p;
        double f13 = b.eval(unit(d13));
        if (f13 == 0.0) return 0.0;
        Vec3 d42 = a2.p - a4.p;
        double f42 = b.eval(unit(d42));
        if (f42 == 0.0) return 0.0;
        return f13 * gauss_density(a1.p, a1.d, a3.p, a3.d) * f42 *
               gauss_density(a4.p, a4.d, a2.p, a2.d);
    };

    // Stratify over disjoint merged passage intervals: the support of
    // f(h13) f(h42) lives in products of the crossing neighborhoods; one
    // stratum per interval 4-tuple (a,b,c,d) where (a,c) and (d,b) can reach
    // the cap. Disjointness of the merged intervals keeps strata disjoint
    // even when passages stack at an uebercrossing.
    auto ivs = merged_intervals(cb);
    auto interval_of = [&](double t) {
        for (std::size_t i = 0; i < ivs.size(); ++i)
            if (ivs[i].contains(t)) return static_cast<int>(i);
        return -1;
    };
    const std::size_t ni = ivs.size();
    std::vector<char> reach(ni * ni, 0); // reach[p*ni+q]: under in p, over in q
    for (std::size_t c = 0; c < cb.crossings.size(); ++c) {
        int p = interval_of(cb.crossings[c].under_t);
        int q = interval_of(cb.crossings[c].over_t);
        if (p >= 0 && q >= 0) reach[static_cast<std::size_t>(p) * ni + q] = 1;
    }
    // Conservative extra reachability for near-misses of the cap.
    for (std::size_t p = 0; p < ni; ++p)
        for (std::size_t q = 0; q < ni; ++q) {
            if (p == q || reach[p * ni + q]) continue;
            Vec3 d = k.point(0.5 * (ivs[q].lo + ivs[q].hi)) -
                     k.point(0.5 * (ivs[p].lo + ivs[p].hi));
            if (norm(d) > 1e-9 && angle_between(d, b.center()) < 3 * b.eps())
                reach[p * ni + q] = 1;
        }
    auto listed = [&](int a1, int b1, int c1, int d1) {
        if (a1 < 0 || b1 < 0 || c1 < 0 || d1 < 0) return false;
        return reach[static_cast<std::size_t>(a1) * ni + c1] &&
               reach[static_cast<std::size_t>(d1) * ni + b1];
    };

    // Within a stratum, the (x1,x3) and (x4,x2) pairs are drawn from a
    // mixture of the tight per-crossing sub-boxes (which track the actual
    // cap preimages) and a uniform floor over the interval product. The
    // mixture density is exact, so overlap of sub-boxes is harmless.
    struct PairProposal {
        std::vector<std::pair<Interval, Interval>> subs; // (under, over)
        Interval u, o;

        void draw(SampleRng& rng, double& xu, double& xo) const {
            if (!subs.empty() && rng.next_double() < 0.7) {
                const auto& s = subs[static_cast<std::size_t>(rng.next_u64() % subs.size())];
                xu = rng.next_in(s.first.lo, s.first.hi);
                xo = rng.next_in(s.second.lo, s.second.hi);
            } else {
                xu = rng.next_in(u.lo, u.hi);
                xo = rng.next_in(o.lo, o.hi);
            }
        }
        double density(double xu, double xo) const {
            double base = 1.0 / (u.len() * o.len());
            if (subs.empty()) return base;
            double q = 0.3 * base;
            for (const auto& s : subs)
                if (s.first.contains(xu) && s.second.contains(xo))
                    q += 0.7 / (subs.size() * s.first.len() * s.second.len());
            return q;
        }
    };

    struct Box4 {
        Interval iv[4];
        PairProposal p13, p42;
    };
    std::vector<Box4> boxes;
    for (std::size_t ia = 0; ia < ni; ++ia)
        for (std::size_t ib = ia; ib < ni; ++ib)
            for (std::size_t ic = ib; ic < ni; ++ic)
                for (std::size_t id = ic; id < ni; ++id) {
                    if (!listed(static_cast<int>(ia), static_cast<int>(ib), static_cast<int>(ic),
                                static_cast<int>(id)))
                        continue;
                    Box4 box{{ivs[ia], ivs[ib], ivs[ic], ivs[id]}, {}, {}};
                    if (!order_feasible({box.iv[0], box.iv[1], box.iv[2], box.iv[3]})) continue;
                    box.p13.u = ivs[ia];
                    box.p13.o = ivs[ic];
                    box.p42.u = ivs[id];
                    box.p42.o = ivs[ib];
                    for (std::size_t cr = 0; cr < cb.crossings.size(); ++cr) {
                        int pu = interval_of(cb.crossings[cr].under_t);
                        int po = interval_of(cb.crossings[cr].over_t);
                        if (pu == static_cast<int>(ia) && po == static_cast<int>(ic))
                            box.p13.subs.push_back({cb.under[cr], cb.over[cr]});
                        if (pu == static_cast<int>(id) && po == static_cast<int>(ib))
                            box.p42.subs.push_back({cb.under[cr], cb.over[cr]});
                    }
                    boxes.push_back(box);
                }

    std::vector<McPiece> pieces;
    for (const auto& box : boxes) {
        pieces.push_back(McPiece{[&, box](SampleRng& rng) {
                                     double x1, x3, x4, x2;
                                     box.p13.draw(rng, x1, x3);
                                     box.p42.draw(rng, x4, x2);
                                     if (!(x1 < x2 && x2 < x3 && x3 < x4)) return 0.0;
                                     double q = box.p13.density(x1, x3) * box.p42.density(x4, x2);
                                     return integrand(x1, x2, x3, x4) / q;
                                 },
                                 4.0});
    }
    // Complement: the whole ordered simplex minus the listed strata.
    double full = (z - a);
    pieces.push_back(McPiece{[&, a, full, interval_of, listed](SampleRng& rng) {
                                 double x[4];
                                 for (int i = 0; i < 4; ++i) x[i] = a + full * rng.next_double();
                                 std::sort(x, x + 4);
                                 if (listed(interval_of(x[0]), interval_of(x[1]), interval_of(x[2]),
                                            interval_of(x[3])))
                                     return 0.0;
                                 double vol = full * full * full * full / 24.0;
                                 return vol * integrand(x[0], x[1], x[2], x[3]);
                             },
                             1.0});

    return run_pieces(pieces, cfg);
}

McEstimate term_tripod(const LongKnotCurve& k, const BumpForm& b, const McConfig& cfg) {
    k.check_in_kn(b.center(), b.eps());
    const Vec3 n = unit(b.center());
    const double a = -1.0 - cfg.padding, z = 1.0 + cfg.padding;
    auto cb = make_crossing_boxes(k, b, cfg.stratification_depth);
    auto ivs = merged_intervals(cb);

    Vec3 lo, hi;
    k.bounding_box(lo, hi);
    // On the support every |x4 - K(xi)| is at most (extent along N)/cos(eps):
    // the cap conditions squeeze the off-knot point between strand heights.
    const double z_span = std::abs((hi.x - lo.x) * n.x) + std::abs((hi.y - lo.y) * n.y) +
                          std::abs((hi.z - lo.z) * n.z);
    const double R = std::max(0.05, 1.05 * z_span / std::cos(b.eps()));
    const double cone_solid = 2 * kPi * (1 - std::cos(b.eps())); // cap solid angle
    Vec3 e1, e2;
    frame_for(n, e1, e2);

    // Mixture proposal for x4: uniform-in-r cones up from K(x1), K(x3) and
    // down from K(x2). Density q is exact; the integrand support lies inside
    // every component's cone, so weights stay bounded.
    auto cone_density = [&](const Vec3& apex, double dir, const Vec3& x4) {
        Vec3 d = (x4 - apex) * dir;
        double r = norm(d);
        if (r <= 1e-12 || r >= R) return 0.0;
        if (angle_between(d, n) >= b.eps()) return 0.0;
        return 1.0 / (R * cone_solid * r * r);
    };
    auto sample_cone = [&](const Vec3& apex, double dir, SampleRng& rng) {
        double r = R * rng.next_double();
        double cz = 1 - (1 - std::cos(b.eps())) * rng.next_double();
        double sz = std::sqrt(std::max(0.0, 1 - cz * cz));
        double phi = 2 * kPi * rng.next_double();
        Vec3 w = n * cz + e1 * (sz * std::cos(phi)) + e2 * (sz * std::sin(phi));
        return apex + w * (r * dir);
    };

    auto tripod_f = [&](double x1, double x2, double x3, const Vec3& x4) {
        Vec3 p1 = k.point(x1), p2 = k.point(x2), p3 = k.point(x3);
        Vec3 u1 = x4 - p1, u2 = x4 - p2, u3 = x4 - p3;
        double r1 = norm(u1), r2 = norm(u2), r3 = norm(u3);
        if (r1 < 1e-12 || r2 < 1e-12 || r3 < 1e-12) return 0.0;
        double f1 = b.eval(u1 / r1);
        if (f1 == 0.0) return 0.0;
        double f2 = b.eval(u2 / (-r2));
        if (f2 == 0.0) return 0.0;
        double f3 = b.eval(u3 / r3);
        if (f3 == 0.0) return 0.0;
        Vec3 E1 = cross(u1, k.deriv(x1)) / (r1 * r1 * r1);
        Vec3 E2 = cross(u2, k.deriv(x2)) / (r2 * r2 * r2);
        Vec3 E3 = cross(u3, k.deriv(x3)) / (r3 * r3 * r3);
        return f1 * f2 * f3 * det3(E1, -E2, E3) / (kFourPi * kFourPi * kFourPi);
    };

    auto draw_x4 = [&](double x1, double x2, double x3, SampleRng& rng, Vec3& x4, double& q) {
        Vec3 p1 = k.point(x1), p2 = k.point(x2), p3 = k.point(x3);
        double pick = rng.next_double();
        if (pick < 1.0 / 3)
            x4 = sample_cone(p1, 1.0, rng);
        else if (pick < 2.0 / 3)
            x4 = sample_cone(p2, -1.0, rng);
        else
            x4 = sample_cone(p3, 1.0, rng);
        q = (cone_density(p1, 1.0, x4) + cone_density(p2, -1.0, x4) +
             cone_density(p3, 1.0, x4)) /
            3.0;
    };

    // Strata: ordered interval triples (identical intervals allowed).
    struct T3 {
        Interval iv[3];
    };
    std::vector<T3> strata;
    for (std::size_t i = 0; i < ivs.size(); ++i)
        for (std::size_t j = i; j < ivs.size(); ++j)
            for (std::size_t l = j; l < ivs.size(); ++l) {
                T3 s{{ivs[i], ivs[j], ivs[l]}};
                if (!order_feasible({s.iv[0], s.iv[1], s.iv[2]})) continue;
                strata.push_back(s);
            }

    std::vector<McPiece> pieces;
    for (const auto& st : strata) {
        double vol = st.iv[0].len() * st.iv[1].len() * st.iv[2].len();
        pieces.push_back(McPiece{[&, st, vol](SampleRng& rng) {
                                     double x1 = rng.next_in(st.iv[0].lo, st.iv[0].hi);
                                     double x2 = rng.next_in(st.iv[1].lo, st.iv[1].hi);
                                     double x3 = rng.next_in(st.iv[2].lo, st.iv[2].hi);
                                     if (!(x1 < x2 && x2 < x3)) return 0.0;
                                     Vec3 x4;
                                     double q;
                                     draw_x4(x1, x2, x3, rng, x4, q);
                                     if (q <= 0) return 0.0;
                                     return vol * tripod_f(x1, x2, x3, x4) / q;
                                 },
                                 3.0});
    }
    // Complement over the full simplex: triples not entirely inside the
    // stratified intervals.
    double full = z - a;
    pieces.push_back(McPiece{[&, ivs, a, full](SampleRng& rng) {
                                 double x[3];
                                 for (int i = 0; i < 3; ++i) x[i] = a + full * rng.next_double();
                                 std::sort(x, x + 3);
                                 bool all_in = true;
                                 for (int i = 0; i < 3; ++i) {
                                     bool in = false;
                                     for (const auto& iv : ivs)
                                         if (iv.contains(x[i])) in = true;
                                     if (!in) all_in = false;
                                 }
                                 if (all_in) return 0.0;
                                 Vec3 x4;
                                 double q;
                                 draw_x4(x[0], x[1], x[2], rng, x4, q);
                                 if (q <= 0) return 0.0;
                                 double vol = full * full * full / 6.0;
                                 return vol * tripod_f(x[0], x[1], x[2], x4) / q;
                             },
                             1.5});

    return run_pieces(pieces, cfg);
}

McEstimate casson_estimate(const LongKnotCurve& k, const BumpForm& b, const McConfig& cfg) {
    McEstimate chords = term_chords(k, b, cfg);
    McEstimate tripod = term_tripod(k, b, cfg);
    McEstimate out;
    out.value = chords.value - tripod.value;
    out.std_error = std::hypot(chords.std_error, tripod.std_error);
    out.n = chords.n + tripod.n;
    out.seed = cfg.seed;
    return out;
}

} // namespace casson
