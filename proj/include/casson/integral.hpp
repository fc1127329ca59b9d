#pragma once

#include "casson/bump.hpp"
#include "casson/curve.hpp"
#include "casson/mc.hpp"

namespace casson {

// Pullback density of the unit-area form under the two-point Gauss map,
// at parameters (s, t) in that argument order:
//   (1/4pi) det[K'(s), K'(t), K(s)-K(t)] / |K(t)-K(s)|^3.
double gauss_density(const Vec3& ps, const Vec3& ds, const Vec3& pt, const Vec3& dt);

// Localized linking integral of two disjoint closed curves.
McEstimate lk_localized(const ClosedCurve& l1, const ClosedCurve& l2, const BumpForm& b,
                        const McConfig& cfg);

// Signed crossing count of the projection of (l1, l2) along b's center:
// the independent oracle for lk_localized.
long long lk_crossing_count(const ClosedCurve& l1, const ClosedCurve& l2, const Vec3& n);

// First term of the localized invariant: integral over x1<x2<x3<x4 of
// f(h13) g13 * f(h42) g42.
McEstimate term_chords(const LongKnotCurve& k, const BumpForm& b, const McConfig& cfg);

// Tripod correction: integral over {x1<x2<x3} x R^3 of
// prod_i f((-1)^(i-1) (x4-K(xi))/|x4-K(xi)|) * det[E1,-E2,E3] / (4pi)^3.
McEstimate term_tripod(const LongKnotCurve& k, const BumpForm& b, const McConfig& cfg);

// term_chords - term_tripod with combined standard error.
McEstimate casson_estimate(const LongKnotCurve& k, const BumpForm& b, const McConfig& cfg);

} // namespace casson
