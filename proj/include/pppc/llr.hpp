#pragma once

// Shared LLR-domain numerics.

#include <cmath>
#include <limits>

namespace pppc {

/// Exact check-node combination 2*atanh(tanh(a/2)*tanh(b/2)) in the stable
/// sign-min-plus-correction form. Identity, not the min-sum approximation.
inline double f_llr(double a, double b) {
    const double s = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    const double m = std::min(std::fabs(a), std::fabs(b));
    return s * m + std::log1p(std::exp(-std::fabs(a + b))) - std::log1p(std::exp(-std::fabs(a - b)));
}

/// Variable-node combination under a known upper-branch bit.
inline double g_llr(double a, double b, bool bit) {
    return bit ? b - a : b + a;
}

/// log(1 + exp(x)) without overflow.
inline double softplus(double x) {
    return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

/// -log P(bit | llr) for a binary posterior with the given LLR:
/// the path-metric penalty of deciding `bit`.
inline double decision_penalty(double llr, bool bit) {
    return softplus(bit ? llr : -llr);
}

inline double clip_llr(double x, double clip) {
    if (clip <= 0) return x;
    return x > clip ? clip : (x < -clip ? -clip : x);
}

/// Streaming log-sum-exp accumulator.
class OnlineLse {
public:
    void add(double x) {
        if (x <= max_) {
            sum_ += std::exp(x - max_);
        } else {
            sum_ = count_ == 0 ? 1.0 : sum_ * std::exp(max_ - x) + 1.0;
            max_ = x;
        }
        ++count_;
    }
    bool empty() const { return count_ == 0; }
    std::size_t count() const { return count_; }
    double max() const { return max_; }
    double value() const {
        return count_ == 0 ? -std::numeric_limits<double>::infinity() : max_ + std::log(sum_);
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
    std::size_t count_ = 0;
};

} // namespace pppc
