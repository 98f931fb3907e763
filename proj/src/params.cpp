#include "nursesim/params.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nursesim {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

SystemParams::SystemParams() : SystemParams(validate(RawParams{})) {}

SystemParams SystemParams::validate(const RawParams& raw) {
    require(finite(raw.alpha) && raw.alpha >= 0.0 && raw.alpha <= 1.0,
            "alpha must lie in [0, 1]");
    require(finite(raw.beta) && raw.beta > 0.0 && raw.beta <= 1.0,
            "beta must lie in (0, 1]");
    require(finite(raw.gamma) && raw.gamma > 0.0 && raw.gamma <= 1.0,
            "gamma must lie in (0, 1]");
    require(!raw.theta.empty(), "theta must have at least one entry (R >= 1)");
    for (double x : raw.theta)
        require(finite(x) && x >= 0.0, "theta entries must be nonnegative");
    const double sum = std::accumulate(raw.theta.begin(), raw.theta.end(), 0.0);
    require(sum > 0.0, "theta must have at least one positive entry");
    require(raw.nurses >= 1, "number of nurses must be >= 1");
    require(raw.periods >= 1, "horizon must be >= 1 period");
    require(raw.warmup >= 0 && raw.warmup < raw.periods,
            "warmup must lie in [0, periods)");
    require(finite(raw.a) && raw.a >= 0.0, "cost exponent a must be >= 0");

    SystemParams p{Blank{}};
    p.alpha_ = raw.alpha;
    p.beta_ = raw.beta;
    p.gamma_ = raw.gamma;
    p.nurses_ = raw.nurses;
    p.periods_ = raw.periods;
    p.warmup_ = raw.warmup;
    p.a_ = raw.a;
    p.theta_mode_ = raw.theta_mode;
    p.theta_raw_sum_ = sum;
    p.theta_ = raw.theta;
    p.theta_raw_ = raw.theta;
    if (raw.theta_mode == ThetaMode::normalize) {
        for (double& x : p.theta_) x /= sum;
    } else {
        require(sum <= 1.0 + 1e-12, "theta entries must sum to at most 1 in as_is mode");
    }
    p.stability_ratio_ = p.alpha_ * p.mean_visits() / (p.beta_ * p.nurses_);
    return p;
}

double SystemParams::mean_visits() const {
    double s = 0.0;
    for (int r = 1; r <= stages(); ++r) s += r * theta(r);
    return s;
}

RawParams SystemParams::raw() const {
    RawParams r;
    r.alpha = alpha_;
    r.beta = beta_;
    r.gamma = gamma_;
    r.theta = theta_raw_;
    r.nurses = nurses_;
    r.periods = periods_;
    r.warmup = warmup_;
    r.a = a_;
    r.theta_mode = theta_mode_;
    return r;
}

SystemParams SystemParams::with_alpha(double alpha) const {
    RawParams r = raw();
    r.alpha = alpha;
    return validate(r);
}

SystemParams SystemParams::with_a(double a) const {
    RawParams r = raw();
    r.a = a;
    return validate(r);
}

double stability_ratio(const SystemParams& p) { return p.stability_ratio(); }

const char* to_string(ThetaMode mode) {
    return mode == ThetaMode::normalize ? "normalize" : "as_is";
}

ThetaMode theta_mode_from_string(const std::string& name) {
    if (name == "normalize") return ThetaMode::normalize;
    if (name == "as_is") return ThetaMode::as_is;
    throw std::invalid_argument("unknown theta mode '" + name + "'");
}

}  // namespace nursesim
