#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace casson {

// Exact rational on int64. Coefficients in this project are tiny (the
// largest denominators come from the 1/2 in the multicrossing formula), so
// overflow checks are assertions rather than bignum.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    long long as_integer() const {
        if (!is_integer()) throw std::logic_error("rational is not an integer: " + str());
        return num_;
    }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const { return Rational(num_ * o.num_, den_ * o.den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    bool operator==(const Rational&) const = default;

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_ = 0;
    long long den_ = 1;
};

} // namespace casson
