#ifndef NURSESIM_PARAMS_HPP
#define NURSESIM_PARAMS_HPP

#include <string>
#include <vector>

namespace nursesim {

// How the arrival-type vector is interpreted.
//   normalize: divide by its sum so it is a proper distribution.
//   as_is:     keep the printed entries; when they sum to s < 1 the missing
//              mass 1 - s is treated as "no arrival" for that period.
enum class ThetaMode { normalize, as_is };

// Unvalidated model constants, as they come from flags or test code.
struct RawParams {
    double alpha = 0.2;
    double beta = 0.8;
    double gamma = 0.1;
    std::vector<double> theta = {0.0, 0.3380, 0.2238, 0.1481, 0.0981};
    int nurses = 1;
    int periods = 10000;
    int warmup = 2000;
    double a = 0.0;
    ThetaMode theta_mode = ThetaMode::normalize;
};

// Validated, immutable model constants. Stage counts r run 1..stages().
class SystemParams {
public:
    // Defaults of RawParams.
    SystemParams();

    // Throws std::invalid_argument on any violated precondition.
    static SystemParams validate(const RawParams& raw);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    double a() const { return a_; }
    int stages() const { return static_cast<int>(theta_.size()); }
    int nurses() const { return nurses_; }
    int periods() const { return periods_; }
    int warmup() const { return warmup_; }
    ThetaMode theta_mode() const { return theta_mode_; }

    // theta(r) for r in 1..R.
    double theta(int r) const { return theta_[static_cast<std::size_t>(r - 1)]; }
    const std::vector<double>& theta_vector() const { return theta_; }
    // Sum of the raw vector; the factor the raw entries were divided by.
    double theta_raw_sum() const { return theta_raw_sum_; }

    // Expected nurse visits per admitted patient, sum_r r * theta_r.
    double mean_visits() const;
    // alpha * sum_r r*theta_r / (beta * I); below 1 means stable.
    double stability_ratio() const { return stability_ratio_; }
    bool unstable() const { return stability_ratio_ >= 1.0; }

    int counted_periods() const { return periods_ - warmup_; }

    // Same constants with one field replaced; re-validated.
    RawParams raw() const;
    SystemParams with_alpha(double alpha) const;
    SystemParams with_a(double a) const;

private:
    struct Blank {};
    explicit SystemParams(Blank) {}

    double alpha_ = 0;
    double beta_ = 1;
    double gamma_ = 1;
    std::vector<double> theta_;
    std::vector<double> theta_raw_;
    double theta_raw_sum_ = 1;
    int nurses_ = 1;
    int periods_ = 1;
    int warmup_ = 0;
    double a_ = 0;
    ThetaMode theta_mode_ = ThetaMode::normalize;
    double stability_ratio_ = 0;
};

// Free-function form of SystemParams::stability_ratio.
double stability_ratio(const SystemParams& p);

const char* to_string(ThetaMode mode);
ThetaMode theta_mode_from_string(const std::string& name);

}  // namespace nursesim

#endif
