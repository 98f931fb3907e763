#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nursesim/experiments.hpp"

using namespace nursesim;

namespace {

SystemParams small(double alpha = 0.2, double a = 0.0, int nurses = 1) {
    RawParams r;
    r.alpha = alpha;
    r.a = a;
    r.nurses = nurses;
    r.periods = 3000;
    r.warmup = 500;
    return SystemParams::validate(r);
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("grids are inclusive and snapped") {
    const auto g = make_grid(0.0, 1.0, 0.1);
    REQUIRE(g.size() == 11);
    CHECK(g[3] == 0.3);
    CHECK(g.back() == 1.0);
    CHECK(make_grid(0.05, 0.25, 0.05).size() == 5);
    CHECK(make_grid(0.5, 0.5, 0.1) == std::vector<double>{0.5});
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("swept parameters") {
    const auto base = small();
    CHECK(with_param(base, SweptParam::beta, 0.9).beta() == 0.9);
    CHECK(with_param(base, SweptParam::gamma, 0.3).gamma() == 0.3);
    CHECK(with_param(base, SweptParam::a, 0.7).a() == 0.7);
    CHECK(with_param(base, SweptParam::alpha, 0.1).alpha() == 0.1);
    CHECK_THROWS_AS(with_param(base, SweptParam::beta, 0.0), std::invalid_argument);
    for (auto p : {SweptParam::a, SweptParam::alpha, SweptParam::beta, SweptParam::gamma})
        CHECK(swept_param_from_string(to_string(p)) == p);
}

TEST_CASE("spearman") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    CHECK(spearman(x, std::vector<double>{2, 4, 6, 8, 100}) == doctest::Approx(1.0));
    CHECK(spearman(x, std::vector<double>{5, 4, 3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(spearman(x, std::vector<double>{3, 3, 3, 3, 3}) == 0.0);
    // average ranks: y ranks 1.5,1.5,3,4,5 -> rho = 0.9746794...
    CHECK(spearman(x, std::vector<double>{1, 1, 2, 3, 4}) == doctest::Approx(0.9746794344808963).epsilon(1e-12));
}

TEST_CASE("paired improvement") {
    const std::vector<double> base = {10, 20, 30};
    const std::vector<double> cand = {9, 18, 27};
    const auto pe = paired_improvement("x", cand, base);
    REQUIRE(pe.improvement);
    CHECK(*pe.improvement == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(pe.improvement_se == doctest::Approx(0.0).epsilon(1e-12));  // exactly proportional
    CHECK(pe.J.mean == 18.0);
    const auto zero = paired_improvement("x", std::vector<double>{0, 0}, std::vector<double>{0, 0});
    CHECK_FALSE(zero.improvement);
}

TEST_CASE("priority sweep shape and degenerate rows") {
    SweepSpec spec;
    spec.param = SweptParam::alpha;
    spec.grid = {0.0, 0.2};
    spec.base = small();
    spec.n_reps = 4;
    const auto rows = priority_sweep(spec);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].degenerate);
    CHECK_FALSE(rows[0].get("shortest_first").improvement);
    CHECK_FALSE(rows[1].degenerate);
    CHECK(rows[1].get("shortest_first").improvement);
    CHECK_FALSE(rows[1].get("longest_first").improvement);
    CHECK_THROWS(rows[1].get("h1"));
}

TEST_CASE("sweep results do not depend on the worker count") {
    SweepSpec spec;
    spec.param = SweptParam::a;
    spec.grid = {0.0, 1.0};
    spec.base = small(0.4, 0.0, 2);
    spec.n_reps = 3;
    spec.workers = 1;
    const auto one = assignment_sweep(spec);
    spec.workers = 3;
    const auto three = assignment_sweep(spec);
    REQUIRE(one.size() == three.size());
    for (std::size_t k = 0; k < one.size(); ++k)
        for (const char* name : {"h1", "h2", "random"})
            CHECK(one[k].get(name).J.mean == three[k].get(name).J.mean);
}

TEST_CASE("invalid sweep specs are rejected") {
    SweepSpec spec;
    spec.base = small();
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);  // empty grid
    spec.grid = {0.1};
    spec.n_reps = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.n_reps = 2;
    spec.grid = {1.5};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("threshold without arrivals has no crossing") {
    const auto res = priority_threshold(small(0.0), {0.0, 0.5, 1.0}, 3, 1);
    CHECK_FALSE(res.a_hat);
    REQUIRE(res.rows.size() == 3);
    CHECK(res.rows[1].shortest.mean == 0.0);
}

TEST_CASE("threshold rows reuse one sample path per replication") {
    const auto base = small(0.2);
    const auto res = priority_threshold(base, {0.0, 1.0}, 4, 9);
    const auto e0 = estimate_J(base, {Priority::shortest_first, Assignment::random}, 4, 9);
    const auto e1 = estimate_J(base.with_a(1.0), {Priority::longest_first, Assignment::random}, 4, 9);
    CHECK(res.rows[0].shortest.mean == doctest::Approx(e0.mean).epsilon(1e-12));
    CHECK(res.rows[1].longest.mean == doctest::Approx(e1.mean).epsilon(1e-12));
    if (res.a_hat) {
        CHECK(*res.a_hat >= res.bracket->first);
        CHECK(*res.a_hat <= res.bracket->second);
    }
}

TEST_CASE("tradeoff picks the cheaper rule per point") {
    TradeoffGrid g;
    g.alphas = {0.2};
    g.betas = {0.8};
    g.gammas = {0.1};
    g.a_grid = {0.0, 1.0};
    const auto pts = tradeoff_curve(small(), g, 3, 2);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].a == 0.0);
    CHECK(pts[0].rule == Priority::shortest_first);
    CHECK(pts[1].rule == Priority::longest_first);
    for (const auto& p : pts) CHECK(p.queue_hi.mean <= p.queue_all.mean);
}

}  // TEST_SUITE
