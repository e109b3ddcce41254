#pragma once

#include "coarse/rational.hpp"

#include <vector>
#include <stdexcept>

namespace coarse {

/// Nondecreasing step function on [0,inf) given by finitely many breakpoints,
/// evaluated by right-continuous lookup: value at t is the value of the last
/// breakpoint with x <= t. Beyond the last breakpoint the last value extends;
/// before the first one the first value extends.
class StepFunction {
public:
    StepFunction() = default;
    explicit StepFunction(std::vector<std::pair<Rat, Rat>> breakpoints)
        : pts_(std::move(breakpoints)) {
        if (pts_.empty()) throw std::invalid_argument("StepFunction: no breakpoints");
        for (size_t i = 1; i < pts_.size(); ++i) {
            if (pts_[i].first <= pts_[i - 1].first)
                throw std::invalid_argument("StepFunction: breakpoints not increasing");
            if (pts_[i].second < pts_[i - 1].second)
                throw std::invalid_argument("StepFunction: values not nondecreasing");
        }
    }

    /// The identity-like linear moduli are common; helper for rho(t) = c*t.
    static StepFunction linear_on(const std::vector<Rat>& sample_points, const Rat& c) {
        std::vector<std::pair<Rat, Rat>> bp;
        for (const auto& t : sample_points) bp.push_back({t, c * t});
        return StepFunction(std::move(bp));
    }

    Rat eval(const Rat& t) const {
        size_t lo = 0;
        if (t < pts_[0].first) return pts_[0].second;
        for (size_t i = 0; i < pts_.size(); ++i)
            if (pts_[i].first <= t) lo = i; else break;
        return pts_[lo].second;
    }

    /// Pointwise composition g(f(t)); exact because f takes finitely many values.
    static StepFunction compose(const StepFunction& g, const StepFunction& f) {
        std::vector<std::pair<Rat, Rat>> bp;
        for (const auto& [x, y] : f.pts_) bp.push_back({x, g.eval(y)});
        return StepFunction(std::move(bp));
    }

    const std::vector<std::pair<Rat, Rat>>& breakpoints() const { return pts_; }

private:
    std::vector<std::pair<Rat, Rat>> pts_;
};

} // namespace coarse
