#include "nursesim/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "nursesim/clearing.hpp"
#include "nursesim/costing.hpp"
#include "nursesim/csv.hpp"
#include "nursesim/experiments.hpp"
#include "nursesim/params.hpp"
#include "nursesim/policies.hpp"

namespace nursesim::cli {

namespace {

// Raised for bad flag values found after CLI11 parsing; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double parse_double(const std::string& tok) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("not a number: '" + tok + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::string fmt(double x) { return format_number(x); }

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + fmt(v[k]);
    return s;
}

struct Options {
    double alpha = 0.2;
    double beta = 0.8;
    double gamma = 0.1;
    std::string theta = "0,0.3380,0.2238,0.1481,0.0981";
    std::string theta_mode = "normalize";
    std::optional<int> stages;
    int nurses = 1;
    int periods = 10000;
    int warmup = 2000;
    double a = 0.0;
    int reps = 20;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string out;
    std::string priority = "shortest_first";
    std::string assignment = "random";

    // sweep
    std::string kind = "priority";
    std::string param = "alpha";
    std::string values = "0.05:0.25:0.05";
    std::optional<std::string> sweep_priority;

    // threshold / clearing / tradeoff
    std::string a_grid = "0:1:0.05";

    // clearing
    int i = 2;
    int j = 3;
    std::string durations = "unit";
    std::string needy_durations;
    std::string content_durations;
    double tolerance = 1e-9;
    int exhaustive = 0;
    std::string exhaustive_values = "1,2";

    // tradeoff
    std::string alphas = "0.05:0.25:0.05";
    std::string betas = "0.8,0.9,1";
    std::string gammas = "0.1:0.5:0.1";
    std::string tradeoff_a_grid = "0:1:0.1";
};

void add_model_flags(CLI::App* app, Options& o) {
    app->add_option("--alpha", o.alpha, "arrival probability per period")->capture_default_str();
    app->add_option("--beta", o.beta, "service completion probability per period")->capture_default_str();
    app->add_option("--gamma", o.gamma, "content-to-needy probability per period")->capture_default_str();
    app->add_option("--theta", o.theta, "arrival type distribution, comma list (length R)")->capture_default_str();
    app->add_option("--theta-mode", o.theta_mode, "normalize | as_is")->capture_default_str();
    app->add_option("--stages", o.stages, "R; must equal the length of --theta when given");
    app->add_option("--nurses", o.nurses, "number of nurses I")->capture_default_str();
    app->add_option("--periods", o.periods, "horizon T")->capture_default_str();
    app->add_option("--warmup", o.warmup, "periods excluded from statistics")->capture_default_str();
    app->add_option("--a", o.a, "holding cost exponent")->capture_default_str();
    app->add_option("--reps", o.reps, "replications")->capture_default_str();
    app->add_option("--seed", o.seed, "master seed; replication k uses seed + k")->capture_default_str();
    app->add_option("--workers", o.workers, "worker threads (0 = all cores)")->capture_default_str();
    app->add_option("--out", o.out, "CSV output path");
}

SystemParams build_params(const Options& o, std::ostream& out) {
    RawParams r;
    r.alpha = o.alpha;
    r.beta = o.beta;
    r.gamma = o.gamma;
    r.theta = parse_list(o.theta);
    if (o.stages && *o.stages != static_cast<int>(r.theta.size()))
        throw UsageError("--stages " + std::to_string(*o.stages) + " does not match --theta length " +
                         std::to_string(r.theta.size()));
    r.theta_mode = theta_mode_from_string(o.theta_mode);
    r.nurses = o.nurses;
    r.periods = o.periods;
    r.warmup = o.warmup;
    r.a = o.a;
    if (o.reps < 1) throw UsageError("--reps must be >= 1");
    const SystemParams p = SystemParams::validate(r);
    if (p.theta_mode() == ThetaMode::normalize)
        out << "theta normalization factor: " << fmt(p.theta_raw_sum()) << '\n';
    if (p.unstable())
        out << "warning: stability ratio " << fmt(p.stability_ratio()) << " >= 1 (system is unstable)\n";
    return p;
}

using Manifest = std::vector<std::pair<std::string, std::string>>;

Manifest base_manifest(const std::string& command, const SystemParams& p, const Options& o) {
    return {
        {"command", command},
        {"alpha", fmt(p.alpha())},
        {"beta", fmt(p.beta())},
        {"gamma", fmt(p.gamma())},
        {"theta", join(p.theta_vector())},
        {"theta_mode", to_string(p.theta_mode())},
        {"theta_raw_sum", fmt(p.theta_raw_sum())},
        {"stages", std::to_string(p.stages())},
        {"nurses", std::to_string(p.nurses())},
        {"periods", std::to_string(p.periods())},
        {"warmup", std::to_string(p.warmup())},
        {"a", fmt(p.a())},
        {"stability_ratio", fmt(p.stability_ratio())},
        {"reps", std::to_string(o.reps)},
        {"seed", std::to_string(o.seed)},
    };
}

void emit(const std::vector<CsvRow>& rows, const CsvSchema& schema, const Options& o, Manifest manifest,
          std::ostream& out) {
    if (o.out.empty()) return;
    write_csv(rows, schema, o.out);
    manifest.emplace_back("schema", schema.tag);
    write_manifest(manifest, o.out + ".manifest");
    out << "wrote " << o.out << " (" << rows.size() << " rows)\n";
}

double pct(const std::optional<double>& x) { return x ? 100.0 * *x : std::nan(""); }

int run_simulate(const Options& o, std::ostream& out) {
    const SystemParams p = build_params(o, out);
    const PolicySpec policy{priority_from_string(o.priority), assignment_from_string(o.assignment)};
    const auto reps = run_replications(p, policy, o.reps, o.seed, o.workers);
    const Estimate J = estimate(total_costs(reps));
    std::vector<double> q_all, q_hi;
    for (const auto& s : reps) {
        q_all.push_back(s.avg_queue_all);
        q_hi.push_back(s.avg_queue_hi);
    }
    const Estimate qa = estimate(q_all), qh = estimate(q_hi);
    out << "policy " << to_string(policy.priority) << "+" << to_string(policy.assignment) << ", " << o.reps
        << " replications\n"
        << "J = " << fmt(J.mean) << " (se " << fmt(J.se) << ")\n"
        << "avg_queue_all = " << fmt(qa.mean) << " (se " << fmt(qa.se) << ")\n"
        << "avg_queue_hi = " << fmt(qh.mean) << " (se " << fmt(qh.se) << ")\n"
        << "stability_ratio = " << fmt(p.stability_ratio()) << '\n';
    const std::string name = std::string(to_string(policy.priority)) + "+" + to_string(policy.assignment);
    std::vector<CsvRow> rows = {{std::string("a"), p.a(), name, J.mean, J.se, std::nan("")}};
    Manifest m = base_manifest("simulate", p, o);
    m.emplace_back("priority", to_string(policy.priority));
    m.emplace_back("assignment", to_string(policy.assignment));
    emit(rows, schemas::sweep, o, std::move(m), out);
    return kOk;
}

int run_sweep(const Options& o, std::ostream& out) {
    const SystemParams p = build_params(o, out);
    SweepSpec spec;
    spec.param = swept_param_from_string(o.param);
    spec.grid = parse_grid(o.values);
    spec.base = p;
    spec.n_reps = o.reps;
    spec.base_seed = o.seed;
    spec.workers = o.workers;
    if (o.sweep_priority) spec.priority = priority_from_string(*o.sweep_priority);

    std::vector<SweepRow> rows;
    if (o.kind == "priority")
        rows = priority_sweep(spec);
    else if (o.kind == "assignment")
        rows = assignment_sweep(spec);
    else
        throw UsageError("--kind must be priority or assignment");

    std::vector<CsvRow> csv;
    for (const auto& row : rows) {
        out << o.param << "=" << fmt(row.value) << (row.degenerate ? "  [degenerate: zero baseline cost]" : "");
        for (const auto& pe : row.policies) {
            csv.push_back({o.param, row.value, pe.policy, pe.J.mean, pe.J.se, pct(pe.improvement)});
            out << "  " << pe.policy << " J=" << fmt(pe.J.mean);
            if (pe.improvement)
                out << " impr=" << fmt(100 * *pe.improvement) << "% (se " << fmt(100 * pe.improvement_se) << "%)";
        }
        out << '\n';
    }
    Manifest m = base_manifest("sweep", p, o);
    m.emplace_back("kind", o.kind);
    m.emplace_back("param", o.param);
    m.emplace_back("values", join(spec.grid));
    if (spec.priority) m.emplace_back("priority", to_string(*spec.priority));
    emit(csv, schemas::sweep, o, std::move(m), out);
    return kOk;
}

int run_threshold(const Options& o, std::ostream& out) {
    const SystemParams p = build_params(o, out);
    const auto grid = parse_grid(o.a_grid);
    const ThresholdResult res = priority_threshold(p, grid, o.reps, o.seed, o.workers);
    std::vector<CsvRow> csv;
    for (const auto& r : res.rows)
        csv.push_back({r.a, r.shortest.mean, r.shortest.se, r.longest.mean, r.longest.se});
    if (res.a_hat)
        out << "a_hat_sim = " << fmt(*res.a_hat) << " (bracket [" << fmt(res.bracket->first) << ", "
            << fmt(res.bracket->second) << "])\n";
    else
        out << "no crossing: J_short - J_long keeps one sign on the grid\n";
    Manifest m = base_manifest("threshold", p, o);
    m.emplace_back("a_grid", join(grid));
    m.emplace_back("a_hat_sim", res.a_hat ? fmt(*res.a_hat) : "none");
    emit(csv, schemas::threshold, o, std::move(m), out);
    return kOk;
}

ClearingInstance build_instance(const Options& o) {
    ClearingInstance inst = ClearingInstance::unit(o.i, o.j);
    if (o.durations != "unit") throw UsageError("--durations accepts only 'unit'; use --needy-durations/--content-durations");
    auto ints = [](const std::string& text) {
        std::vector<int> v;
        for (double x : parse_list(text)) {
            if (x != std::floor(x)) throw UsageError("durations must be integers");
            v.push_back(static_cast<int>(x));
        }
        return v;
    };
    if (!o.needy_durations.empty()) inst.needy_durations = ints(o.needy_durations);
    if (!o.content_durations.empty()) inst.content_durations = ints(o.content_durations);
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return inst;
}

int run_exhaustive(const Options& o, std::ostream& out) {
    std::vector<int> values;
    for (double x : parse_list(o.exhaustive_values)) values.push_back(static_cast<int>(x));
    long instances = 0, lemma_fail = 0, sign_fail = 0, form_fail = 0, interior = 0, identity_miss = 0;
    for_each_clearing_instance(o.exhaustive, values, [&](const ClearingInstance& inst) {
        ++instances;
        const ClearingResult res = simulate_clearing(inst);
        if (!check_lemma2(res).passed()) ++lemma_fail;
        const auto c0 = clearing_costs(res, 0.0), c1 = clearing_costs(res, 1.0);
        if (c0.diff() < 0.0 || c1.diff() > 0.0) ++sign_fail;
        // c2(0) - c1(0) against the late waits of patient 2 in s2; informational,
        // it differs whenever patient 2's extra visits delay patient 1 in s2
        double late = 0.0;
        for (int l = inst.i; l < inst.j; ++l) late += res.system[1].waiting[1][static_cast<std::size_t>(l)];
        if (c0.diff() != late) ++identity_miss;
        for (double a : {0.0, 0.25, 0.5, 0.75, 1.0})
            if (!clearing_costs(res, a).forms_agree) {
                ++form_fail;
                break;
            }
        const double th = clearing_threshold(res, o.tolerance);
        if (th > 0.0 && th < 1.0) ++interior;
    });
    out << "instances=" << instances << " lemma2_failures=" << lemma_fail << " sign_failures=" << sign_fail
        << " form_mismatches=" << form_fail << " interior_thresholds=" << interior
        << " late_wait_identity_mismatches=" << identity_miss << '\n';
    return lemma_fail || sign_fail || form_fail ? kRuntimeError : kOk;
}

int run_clearing(const Options& o, std::ostream& out) {
    if (o.exhaustive > 0) return run_exhaustive(o, out);
    const ClearingInstance inst = build_instance(o);
    const ClearingResult res = simulate_clearing(inst);
    const Lemma2Report rep = check_lemma2(res);
    const auto grid = parse_grid(o.a_grid);
    std::vector<CsvRow> csv;
    for (double a : grid) {
        const ClearingCosts c = clearing_costs(res, a);
        csv.push_back({std::int64_t{inst.i}, std::int64_t{inst.j}, a, c.c1, c.c2, c.diff(), rep.passed()});
    }
    const auto& d1 = res.system[0].needy_departure;
    const auto& d2 = res.system[1].needy_departure;
    out << "s1 (shortest first): patient 1 discharged at " << d1[0].back() << ", patient 2 at " << d1[1].back() << '\n'
        << "s2 (longest first):  patient 1 discharged at " << d2[0].back() << ", patient 2 at " << d2[1].back() << '\n'
        << "lemma2: " << (rep.passed() ? "pass" : "FAIL") << '\n'
        << "threshold a_hat = " << fmt(clearing_threshold(res, o.tolerance)) << '\n';
    Manifest m = {{"command", "clearing"},
                  {"i", std::to_string(inst.i)},
                  {"j", std::to_string(inst.j)},
                  {"needy_durations", o.needy_durations.empty() ? "unit" : o.needy_durations},
                  {"content_durations", o.content_durations.empty() ? "unit" : o.content_durations},
                  {"a_grid", join(grid)},
                  {"seed", "none (deterministic)"}};
    emit(csv, schemas::clearing, o, std::move(m), out);
    return kOk;
}

int run_tradeoff(const Options& o, std::ostream& out) {
    const SystemParams p = build_params(o, out);
    TradeoffGrid grid;
    grid.alphas = parse_grid(o.alphas);
    grid.betas = parse_grid(o.betas);
    grid.gammas = parse_grid(o.gammas);
    grid.a_grid = parse_grid(o.tradeoff_a_grid);
    const auto points = tradeoff_curve(p, grid, o.reps, o.seed, o.workers);
    std::vector<CsvRow> csv;
    for (const auto& pt : points)
        csv.push_back({pt.alpha, pt.beta, pt.gamma, pt.a, std::string(to_string(pt.rule)), pt.queue_all.mean,
                       pt.queue_hi.mean});
    out << points.size() << " tradeoff points\n";
    Manifest m = base_manifest("tradeoff", p, o);
    m.emplace_back("alphas", join(grid.alphas));
    m.emplace_back("betas", join(grid.betas));
    m.emplace_back("gammas", join(grid.gammas));
    m.emplace_back("a_grid", join(grid.a_grid));
    emit(csv, schemas::tradeoff, o, std::move(m), out);
    return kOk;
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
        v.push_back(parse_double(tok));
    }
    if (v.empty()) throw std::invalid_argument("empty list");
    return v;
}

std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') == std::string::npos) return parse_list(text);
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(trim(tok));
    if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:step, got '" + text + "'");
    return make_grid(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
}

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete-time nurse queue simulator with patient reentrance"};
    app.name("nursesim");
    app.require_subcommand(1);
    Options o;

    auto* simulate = app.add_subcommand("simulate", "estimate the holding cost of one policy");
    add_model_flags(simulate, o);
    simulate->add_option("--priority", o.priority, "shortest_first | longest_first")->capture_default_str();
    simulate->add_option("--assignment", o.assignment, "h1 | h2 | random")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "compare policies over a parameter grid");
    add_model_flags(sweep, o);
    sweep->add_option("--kind", o.kind, "priority | assignment")->capture_default_str();
    sweep->add_option("--param", o.param, "a | alpha | beta | gamma")->capture_default_str();
    sweep->add_option("--values", o.values, "lo:hi:step or comma list")->capture_default_str();
    sweep->add_option("--priority", o.sweep_priority, "priority rule for assignment sweeps");

    auto* threshold = app.add_subcommand("threshold", "locate the shortest/longest-first cost crossing in a");
    add_model_flags(threshold, o);
    threshold->add_option("--a-grid", o.a_grid, "lo:hi:step or comma list")->capture_default_str();

    auto* clearing = app.add_subcommand("clearing", "exact two-patient clearing system");
    clearing->add_option("--i", o.i, "visits of patient 1")->capture_default_str();
    clearing->add_option("--j", o.j, "visits of patient 2 (>= i)")->capture_default_str();
    clearing->add_option("--durations", o.durations, "duration profile: unit")->capture_default_str();
    clearing->add_option("--needy-durations", o.needy_durations, "j service durations, comma list");
    clearing->add_option("--content-durations", o.content_durations, "j-1 content durations, comma list");
    clearing->add_option("--a-grid", o.a_grid, "lo:hi:step or comma list")->capture_default_str();
    clearing->add_option("--tolerance", o.tolerance, "bisection tolerance")->capture_default_str();
    clearing->add_option("--exhaustive", o.exhaustive, "check every instance with types up to N");
    clearing->add_option("--exhaustive-values", o.exhaustive_values, "duration values for --exhaustive")
        ->capture_default_str();
    clearing->add_option("--out", o.out, "CSV output path");

    auto* tradeoff = app.add_subcommand("tradeoff", "queue-length tradeoff over a parameter grid");
    add_model_flags(tradeoff, o);
    tradeoff->add_option("--alphas", o.alphas, "alpha grid")->capture_default_str();
    tradeoff->add_option("--betas", o.betas, "beta grid")->capture_default_str();
    tradeoff->add_option("--gammas", o.gammas, "gamma grid")->capture_default_str();
    tradeoff->add_option("--a-grid", o.tradeoff_a_grid, "a grid")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return kUsageError;
    }

    try {
        if (*simulate) return run_simulate(o, out);
        if (*sweep) return run_sweep(o, out);
        if (*threshold) return run_threshold(o, out);
        if (*clearing) return run_clearing(o, out);
        if (*tradeoff) return run_tradeoff(o, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}

}  // namespace nursesim::cli
