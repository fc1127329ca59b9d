#pragma once

#include "casson/geometry.hpp"

namespace casson {

// Unit-mass bump 2-form on S^2: f * omega with omega the unit-area form,
// f(theta) = c * exp(-1/(1-(theta/eps)^2)) inside the eps-cap about N and 0
// outside. c is fixed by 1-D quadrature so the cap integrates to 1.
class BumpForm {
public:
    BumpForm() = default;
    BumpForm(const Vec3& n, double eps_radians);

    double eval(const Vec3& xi) const; // f at a unit vector
    double profile(double theta) const;

    const Vec3& center() const { return n_; }
    double eps() const { return eps_; }
    double normalization() const { return c_; }

private:
    Vec3 n_{0, 0, 1};
    double eps_ = 0.1;
    double c_ = 0;
};

} // namespace casson
