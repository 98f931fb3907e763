#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "nursesim/params.hpp"

using namespace nursesim;

namespace {

const std::vector<double> kDefaultTheta = {0, 0.3380, 0.2238, 0.1481, 0.0981};

// Direct summation of sum_r r * theta_r / sum_r theta_r on the printed vector.
double direct_mean_visits(const std::vector<double>& raw) {
    double num = 0, den = 0;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        num += static_cast<double>(k + 1) * raw[k];
        den += raw[k];
    }
    return num / den;
}

}  // namespace

TEST_SUITE("core-model") {

TEST_CASE("default theta is renormalized by its sum") {
    RawParams r;
    r.theta = kDefaultTheta;
    const auto p = SystemParams::validate(r);
    CHECK(p.theta_raw_sum() == doctest::Approx(0.8080).epsilon(1e-12));
    double sum = 0;
    for (int k = 1; k <= p.stages(); ++k) {
        CHECK(p.theta(k) == doctest::Approx(kDefaultTheta[static_cast<std::size_t>(k - 1)] / 0.8080).epsilon(1e-12));
        sum += p.theta(k);
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK(p.stages() == 5);
}

TEST_CASE("single type") {
    RawParams r;
    r.theta = {1.0};
    const auto p = SystemParams::validate(r);
    CHECK(p.stages() == 1);
    CHECK(p.theta(1) == 1.0);
}

TEST_CASE("stability ratio of the default setting") {
    RawParams r;
    r.alpha = 0.2;
    r.beta = 0.8;
    r.nurses = 1;
    r.theta = kDefaultTheta;
    const auto p = SystemParams::validate(r);
    const double visits = direct_mean_visits(kDefaultTheta);  // 2.4303 / 0.808
    CHECK(visits == doctest::Approx(3.007797).epsilon(1e-6));
    CHECK(p.mean_visits() == doctest::Approx(visits).epsilon(1e-12));
    CHECK(stability_ratio(p) == doctest::Approx(0.2 * visits / 0.8).epsilon(1e-12));
    CHECK(stability_ratio(p) == doctest::Approx(0.751949).epsilon(1e-6));
    CHECK_FALSE(p.unstable());
}

TEST_CASE("stability ratio edge cases") {
    RawParams r;
    r.alpha = 0.0;
    CHECK(SystemParams::validate(r).stability_ratio() == 0.0);

    r.alpha = 0.2;
    r.nurses = 1;
    const double one = SystemParams::validate(r).stability_ratio();
    r.nurses = 2;
    CHECK(SystemParams::validate(r).stability_ratio() == doctest::Approx(one / 2).epsilon(1e-15));

    r.alpha = 0.5;
    r.nurses = 1;
    const auto hot = SystemParams::validate(r);
    CHECK(hot.unstable());  // a warning, not an error
}

TEST_CASE("invalid parameters are rejected") {
    auto bad = [](auto mutate) {
        RawParams r;
        mutate(r);
        CHECK_THROWS_AS(SystemParams::validate(r), std::invalid_argument);
    };
    bad([](RawParams& r) { r.alpha = -0.1; });
    bad([](RawParams& r) { r.alpha = 1.5; });
    bad([](RawParams& r) { r.beta = 0.0; });
    bad([](RawParams& r) { r.gamma = -1; });
    bad([](RawParams& r) { r.theta = {}; });
    bad([](RawParams& r) { r.theta = {0, 0, 0}; });
    bad([](RawParams& r) { r.theta = {0.5, -0.1}; });
    bad([](RawParams& r) { r.warmup = r.periods; });
    bad([](RawParams& r) { r.warmup = -1; });
    bad([](RawParams& r) { r.nurses = 0; });
    bad([](RawParams& r) { r.periods = 0; });
    bad([](RawParams& r) { r.a = -0.5; });
    bad([](RawParams& r) {
        r.theta_mode = ThetaMode::as_is;
        r.theta = {0.7, 0.7};
    });
}

TEST_CASE("as_is mode keeps the printed vector") {
    RawParams r;
    r.theta_mode = ThetaMode::as_is;
    const auto p = SystemParams::validate(r);
    CHECK(p.theta(2) == 0.3380);
    CHECK(p.mean_visits() == doctest::Approx(2.4303).epsilon(1e-12));
}

TEST_CASE("property: renormalized theta sums to one") {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::uniform_int_distribution<int> len(1, 12);
    for (int trial = 0; trial < 500; ++trial) {
        RawParams r;
        r.theta.resize(static_cast<std::size_t>(len(gen)));
        for (auto& x : r.theta) x = (gen() % 3 == 0) ? 0.0 : u(gen);
        r.theta.back() += 1e-3;
        const auto p = SystemParams::validate(r);
        const auto& th = p.theta_vector();
        CHECK(std::abs(std::accumulate(th.begin(), th.end(), 0.0) - 1.0) < 1e-12);
    }
}

TEST_CASE("property: stability ratio monotone in alpha, beta, I") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int trial = 0; trial < 300; ++trial) {
        RawParams r;
        r.alpha = u(gen) * 0.5;
        r.beta = u(gen);
        r.nurses = 1 + static_cast<int>(gen() % 4);
        const double base = SystemParams::validate(r).stability_ratio();
        RawParams more_alpha = r, more_beta = r, more_nurses = r;
        more_alpha.alpha = std::min(1.0, r.alpha + 0.01);
        more_beta.beta = std::min(1.0, r.beta + 0.005);
        more_nurses.nurses = r.nurses + 1;
        CHECK(SystemParams::validate(more_alpha).stability_ratio() > base);
        if (more_beta.beta > r.beta) CHECK(SystemParams::validate(more_beta).stability_ratio() < base);
        CHECK(SystemParams::validate(more_nurses).stability_ratio() < base);
    }
}

}  // TEST_SUITE
