#include "casson/bump.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace casson {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1);
        x[i] = t;
        w[i] = 2.0 / ((1 - t * t) * dp * dp);
    }
}

} // namespace

BumpForm::BumpForm(const Vec3& n, double eps_radians) : n_(unit(n)), eps_(eps_radians) {
    if (!(eps_ > 0) || eps_ >= std::acos(-1.0))
        throw std::invalid_argument("bump radius must lie in (0, pi)");
    // Fix c by (1/2) * int_0^eps profile(theta) sin(theta) dtheta = 1, the
    // cap integral of f against the unit-area form.
    std::vector<double> x, w;
    gauss_legendre(160, x, w);
    double integral = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double theta = 0.5 * eps_ * (x[i] + 1.0);
        double u = theta / eps_;
        integral += w[i] * 0.5 * eps_ * std::exp(-1.0 / (1.0 - u * u)) * std::sin(theta);
    }
    c_ = 2.0 / integral;
}

double BumpForm::profile(double theta) const {
    if (!(theta < eps_) || theta < 0) return 0.0;
    double u = theta / eps_;
    return c_ * std::exp(-1.0 / (1.0 - u * u));
}

double BumpForm::eval(const Vec3& xi) const {
    return profile(angle_between(xi, n_));
}

} // namespace casson
