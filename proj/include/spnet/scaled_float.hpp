#pragma once

// double mantissa with a wide explicit exponent: value = frac * 2^exp2.
// Path-count expectations grow geometrically (finite doubles give out near
// n ~ 5000), but only ~1e-15 relative accuracy is ever needed, so a frexp
// pair is the right tool; everything renormalizes on the way through.

#include <cmath>
#include <cstdint>
#include <limits>

namespace spnet {

class ScaledFloat {
public:
    ScaledFloat() = default;
    ScaledFloat(double v) { assign(v, 0); }

    static ScaledFloat from_parts(double frac, std::int64_t exp2) {
        ScaledFloat s;
        s.assign(frac, exp2);
        return s;
    }

    double frac() const { return frac_; }
    std::int64_t exp2() const { return exp2_; }
    bool zero() const { return frac_ == 0.0; }

    // natural log; frac_ > 0 required
    double log() const { return std::log(frac_) + static_cast<double>(exp2_) * ln2_; }
    double log2() const { return std::log2(frac_) + static_cast<double>(exp2_); }

    // finite only while exp2 is in double range; +/-inf past it
    double to_double() const { return std::ldexp(frac_, clamp_exp()); }

    ScaledFloat& operator*=(const ScaledFloat& o) {
        assign(frac_ * o.frac_, exp2_ + o.exp2_);
        return *this;
    }
    ScaledFloat& operator*=(double v) {
        assign(frac_ * v, exp2_);
        return *this;
    }
    ScaledFloat& operator/=(const ScaledFloat& o) {
        assign(frac_ / o.frac_, exp2_ - o.exp2_);
        return *this;
    }
    ScaledFloat& operator+=(const ScaledFloat& o) {
        if (o.zero()) return *this;
        if (zero()) { *this = o; return *this; }
        std::int64_t d = exp2_ - o.exp2_;
        if (d >= 1075) return *this;           // addend below one ulp
        if (d <= -1075) { *this = o; return *this; }
        if (d >= 0)
            assign(frac_ + std::ldexp(o.frac_, static_cast<int>(-d)), exp2_);
        else
            assign(std::ldexp(frac_, static_cast<int>(d)) + o.frac_, o.exp2_);
        return *this;
    }

    friend ScaledFloat operator*(ScaledFloat a, const ScaledFloat& b) { return a *= b; }
    friend ScaledFloat operator*(ScaledFloat a, double b) { return a *= b; }
    friend ScaledFloat operator/(ScaledFloat a, const ScaledFloat& b) { return a /= b; }
    friend ScaledFloat operator+(ScaledFloat a, const ScaledFloat& b) { return a += b; }

    // ratio as a plain double (valid when the result is in double range)
    friend double ratio(const ScaledFloat& a, const ScaledFloat& b) {
        return a.frac_ / b.frac_ * std::ldexp(1.0, static_cast<int>(a.exp2_ - b.exp2_));
    }

private:
    double frac_ = 0.0;
    std::int64_t exp2_ = 0;
    static constexpr double ln2_ = 0.6931471805599453;

    int clamp_exp() const {
        return static_cast<int>(std::min<std::int64_t>(std::max<std::int64_t>(exp2_, -5000), 5000));
    }
    void assign(double v, std::int64_t e) {
        if (v == 0.0 || !std::isfinite(v)) {
            frac_ = v;
            exp2_ = 0;
            return;
        }
        int k;
        frac_ = std::frexp(v, &k);
        exp2_ = e + k;
    }
};

}  // namespace spnet
