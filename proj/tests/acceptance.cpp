#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "evosizer/algorithms/operators.hpp"
#include "evosizer/algorithms/optimizer.hpp"
#include "evosizer/circuit/analytic_evaluator.hpp"
#include "evosizer/circuit/bounds.hpp"
#include "evosizer/circuit/mosfet.hpp"
#include "evosizer/circuit/spec_file.hpp"
#include "evosizer/circuit/survivability.hpp"
#include "evosizer/core/sampling.hpp"
#include "evosizer/harness/benchmarks.hpp"
#include "evosizer/harness/compare.hpp"
#include "evosizer/harness/experiment.hpp"
#include "evosizer/harness/report.hpp"
#include "evosizer/spice/measurements.hpp"
#include "evosizer/spice/netlist.hpp"
#include "evosizer/spice/simulator.hpp"

using namespace evosizer;
using algorithms::Algorithm;
using circuit::Topology;

namespace {

const std::string kFixtures = EVOSIZER_FIXTURES;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += what;
        }
    }
};

constexpr Algorithm kModified[] = {Algorithm::Mabco, Algorithm::Mga, Algorithm::Mgwo, Algorithm::Mpso};
constexpr Algorithm kAll[] = {Algorithm::Mabco, Algorithm::Mga, Algorithm::Mgwo, Algorithm::Mpso,
                              Algorithm::Sabco, Algorithm::Sga, Algorithm::Sgwo, Algorithm::Spso};

double rel_err(double got, double want)
{
    return std::abs(got - want) / std::max(std::abs(want), 1.0);
}

// ---- 1

struct PublishedDesign {
    Algorithm algorithm;
    std::vector<double> two_stage; // W12 W34 W58 W6 W7 in nm, Ib in uA
    double two_stage_area;
    std::vector<double> folded; // W12 W34bp Wbn5 W67 W89 W1011 in nm
    double folded_area;
};

Outcome area_identity()
{
    const PublishedDesign designs[] = {
        {Algorithm::Mabco, {259, 797, 121, 1114, 183, 28.8}, 0.2191, {8686, 3417, 1118, 805, 367, 6156}, 8.013},
        {Algorithm::Mga, {264, 787, 130, 1099, 195, 29.4}, 0.2194, {8956, 3450, 1059, 784, 355, 5945}, 8.019},
        {Algorithm::Mgwo, {263, 789, 127, 1104, 191, 29.3}, 0.2192, {8690, 3367, 1133, 801, 367, 6220}, 8.014},
        {Algorithm::Mpso, {257, 801, 121, 1113, 183, 28.6}, 0.2192, {8715, 3418, 1169, 892, 339, 6035}, 8.020},
    };
    auto area = [](Topology t, std::vector<double> x, double l) {
        const auto w = circuit::expand_widths(t, x);
        return circuit::area_fitness(w, std::vector<double>(w.size(), l)) * 1e12;
    };
    Outcome o;
    std::string values;
    for (const auto& d : designs) {
        std::vector<double> ts;
        for (std::size_t i = 0; i < 5; ++i) {
            ts.push_back(d.two_stage[i] * 1e-9);
        }
        ts.push_back(d.two_stage[5] * 1e-6);
        std::vector<double> fc;
        for (double w : d.folded) {
            fc.push_back(w * 1e-9);
        }
        fc.push_back(100e-6);
        const double a2 = area(Topology::TwoStageMiller, ts, 60e-9);
        const double af = area(Topology::FoldedCascode, fc, 180e-9);
        const auto name = algorithms::to_string(d.algorithm);
        o.require(std::abs(a2 - d.two_stage_area) <= 0.0005, fmt::format("{} two-stage {:.5f}", name, a2));
        o.require(std::abs(af - d.folded_area) <= 0.005, fmt::format("{} folded {:.4f}", name, af));
        values += fmt::format(" {} {:.4f}/{:.3f}", name, a2, af);
    }
    if (o.pass) {
        o.detail = "um^2" + values;
    }
    return o;
}

// ---- 2

Outcome schedules()
{
    using namespace algorithms;
    Outcome o;
    o.require(abco_limit_schedule(300, 300, 5, 15) == 5, "limit(300) != 5");
    o.require(abco_limit_schedule(150, 300, 5, 15) == 10, "limit(150) != 10");

    harness::ExperimentConfig c;
    c.problem = "two_stage_65n";
    const auto p = harness::default_params(c);
    // The ramp starts at gen 1, one step below alpha_max; extrapolate back to gen 0.
    const double a1 = ga_alpha_schedule(1, 300, p.ga.alpha_min, p.ga.alpha_max);
    const double a2 = ga_alpha_schedule(2, 300, p.ga.alpha_min, p.ga.alpha_max);
    o.require(std::abs(2.0 * a1 - a2 - p.ga.alpha_max) <= 1e-15, "alpha start");
    o.require(ga_alpha_schedule(300, 300, p.ga.alpha_min, p.ga.alpha_max) == p.ga.alpha_min, "alpha end");
    o.require(pso_inertia_schedule(1, 300, p.pso.w_min, p.pso.w_max) == 0.8, "inertia start");
    o.require(pso_inertia_schedule(300, 300, p.pso.w_min, p.pso.w_max) == 0.5, "inertia end");
    o.require(gwo_a_schedule(1, 300) == 2.0, "a start");
    o.require(gwo_a_schedule(300, 300) == 0.0, "a end");

    for (int i = 2; i <= 300; ++i) {
        const bool mono = abco_limit_schedule(i, 300, 5, 15) <= abco_limit_schedule(i - 1, 300, 5, 15) &&
                          ga_alpha_schedule(i, 300, 0.01, 0.2) <= ga_alpha_schedule(i - 1, 300, 0.01, 0.2) &&
                          pso_inertia_schedule(i, 300, 0.5, 0.8) <= pso_inertia_schedule(i - 1, 300, 0.5, 0.8) &&
                          gwo_a_schedule(i, 300) <= gwo_a_schedule(i - 1, 300) &&
                          abco_dim_schedule(i, 300, 6) <= abco_dim_schedule(i - 1, 300, 6);
        if (!mono) {
            o.require(false, fmt::format("increase at iteration {}", i));
            break;
        }
    }
    if (o.pass) {
        o.detail = "endpoints exact, monotone over 1..300";
    }
    return o;
}

// ---- 3

Outcome update_oracles()
{
    Outcome o;
    double worst = 0.0;
    core::RngStream cases(31337, {});
    for (std::size_t k = 0; k < 10000; ++k) {
        const std::size_t dim = cases.integer(1, 8);
        auto vec = [&](double span) {
            std::vector<double> v(dim);
            for (double& e : v) {
                e = cases.uniform(-span, span);
            }
            return v;
        };
        const auto x = vec(10), xa = vec(10), xb = vec(10), xd = vec(10), v = vec(3);
        const double a = cases.uniform(0.0, 2.0);
        const double w = cases.uniform(0.3, 0.9);
        const double c1 = cases.uniform(0.5, 2.5);
        const double c2 = cases.uniform(0.5, 2.5);

        core::RngStream rng(k, {7});
        core::RngStream mirror = rng;
        const auto got = algorithms::gwo_position_update(x, xa, xb, xd, a, rng);
        for (std::size_t d = 0; d < dim; ++d) {
            double sum = 0.0;
            for (const double leader : {xa[d], xb[d], xd[d]}) {
                const double r1 = mirror.uniform();
                const double r2 = mirror.uniform();
                const double big_a = 2.0 * a * r1 - a;
                const double big_c = 2.0 * r2;
                const double dist = std::abs(big_c * leader - x[d]);
                sum += leader - big_a * dist;
            }
            worst = std::max(worst, rel_err(got[d], sum / 3.0));
        }

        core::RngStream prng(k, {8});
        core::RngStream pmirror = prng;
        const auto s = algorithms::pso_update(x, v, xa, xb, w, c1, c2, prng);
        for (std::size_t d = 0; d < dim; ++d) {
            const double r1 = pmirror.uniform();
            const double r2 = pmirror.uniform();
            const double vel = w * v[d] + c1 * r1 * (xa[d] - x[d]) + c2 * r2 * (xb[d] - x[d]);
            worst = std::max(worst, rel_err(s.velocity[d], vel));
            worst = std::max(worst, rel_err(s.position[d], x[d] + vel));
        }
    }
    o.require(worst <= 1e-12, fmt::format("max relative error {:.3e}", worst));
    if (o.pass) {
        o.detail = fmt::format("10000 cases, max relative error {:.3e}", worst);
    }
    return o;
}

// ---- 4

Outcome sphere_convergence()
{
    Outcome o;
    const harness::BenchmarkEvaluator sphere(harness::BenchmarkEvaluator::Kind::Sphere, 6);
    std::string counts;
    for (Algorithm alg : kModified) {
        algorithms::AlgorithmParams p;
        p.set_population(20);
        p.set_iterations(300);
        int solved = 0;
        for (int r = 0; r < 10; ++r) {
            const auto res = algorithms::run_algorithm(alg, sphere, p, harness::run_seed(4, r));
            solved += res.best.fitness <= 1e-3 ? 1 : 0;
        }
        o.require(solved >= 9, fmt::format("{} solved {}/10", algorithms::to_string(alg), solved));
        counts += fmt::format(" {} {}/10", algorithms::to_string(alg), solved);
    }
    if (o.pass) {
        o.detail = "fitness <= 1e-3:" + counts;
    }
    return o;
}

// ---- 5

Outcome feasibility()
{
    Outcome o;
    int checked = 0;
    for (const auto& [problem, population] : {std::pair{"two_stage_65n", 20}, std::pair{"folded_cascode_180n", 30}}) {
        const circuit::AnalyticCircuitEvaluator fresh(circuit::load_preset(problem));
        for (Algorithm alg : kAll) {
            harness::ExperimentConfig c;
            c.algorithm = alg;
            c.problem = problem;
            c.population = population;
            c.iterations = 200;
            c.runs = 10;
            c.master_seed = 5;
            c.workers = 4;
            c.params = harness::default_params(c);
            const auto r = harness::run_experiment(c);
            int failed = 0;
            for (const auto& run : r.stats.runs) {
                const auto verdict = circuit::survivability_test(fresh.report(run.best_position), fresh.problem().spec);
                failed += verdict.pass ? 0 : 1;
                ++checked;
            }
            o.require(failed == 0, fmt::format("{} {}: {} of 10 finals fail", algorithms::to_string(alg), problem, failed));
        }
    }
    if (o.pass) {
        o.detail = fmt::format("{} finals from 8 algorithms on 2 presets pass re-evaluation", checked);
    }
    return o;
}

// ---- 6

Outcome modified_beats_standard()
{
    Outcome o;
    std::string rows;
    const std::pair<Algorithm, Algorithm> pairs[] = {
        {Algorithm::Mabco, Algorithm::Sabco}, {Algorithm::Mga, Algorithm::Sga}, {Algorithm::Mgwo, Algorithm::Sgwo}};
    for (const auto& [mod, std_alg] : pairs) {
        auto config = [](Algorithm alg) {
            harness::ExperimentConfig c;
            c.algorithm = alg;
            c.problem = "two_stage_65n";
            c.population = 10;
            c.iterations = 100;
            c.runs = 10;
            c.master_seed = 6;
            c.workers = 4;
            c.params = harness::default_params(c);
            return c;
        };
        const auto cmp = harness::compare_variants(config(mod), config(std_alg));
        const auto& m = cmp.modified.stats.fitness;
        const auto& s = cmp.standard.stats.fitness;
        const auto name = fmt::format("{}/{}", algorithms::to_string(mod), algorithms::to_string(std_alg));
        o.require(m.mean <= s.mean, fmt::format("{} mean {:.4g} > {:.4g}", name, m.mean * 1e12, s.mean * 1e12));
        o.require(m.stdev <= s.stdev, fmt::format("{} stdev {:.4g} > {:.4g}", name, m.stdev * 1e12, s.stdev * 1e12));
        rows += fmt::format(" {} mean {:.4f}/{:.4f} stdev {:.4f}/{:.4f}", name, m.mean * 1e12, s.mean * 1e12,
                            m.stdev * 1e12, s.stdev * 1e12);
    }
    if (o.pass) {
        o.detail = "um^2" + rows;
    }
    return o;
}

// ---- 7

Outcome pgf_effectiveness()
{
    Outcome o;
    const circuit::AnalyticCircuitEvaluator ev(circuit::load_preset("two_stage_65n"));
    int pgf = 0;
    int uniform = 0;
    const int samples = 1000;
    for (int i = 0; i < samples; ++i) {
        core::RngStream a(7, {0, static_cast<std::uint64_t>(i)});
        core::RngStream b(7, {1, static_cast<std::uint64_t>(i)});
        pgf += ev.assess(circuit::generate_candidate_pgf(ev.derived_bounds(), a).position).feasible ? 1 : 0;
        uniform += ev.assess(core::sample_uniform(ev.search_space(), b)).feasible ? 1 : 0;
    }
    o.require(pgf > 0, "no PGF sample passes");
    o.require(pgf >= 3 * uniform, fmt::format("PGF {} vs uniform {} passes", pgf, uniform));
    if (o.pass) {
        o.detail = fmt::format("pass rate PGF {}/{} vs uniform {}/{}", pgf, samples, uniform, samples);
        if (uniform > 0) {
            o.detail += fmt::format(", ratio {:.1f}", static_cast<double>(pgf) / uniform);
        }
    }
    return o;
}

// ---- 8

Outcome determinism()
{
    Outcome o;
    int compared = 0;
    for (Algorithm alg : kAll) {
        harness::ExperimentConfig c;
        c.algorithm = alg;
        c.problem = "two_stage_65n";
        c.population = 10;
        c.iterations = 60;
        c.runs = 6;
        c.master_seed = 8;
        c.checkpoints = {20, 40, 60};
        c.params = harness::default_params(c);
        std::vector<std::string> reports;
        for (int workers : {1, 4, 8}) {
            c.workers = workers;
            const auto r = harness::run_experiment(c);
            reports.push_back(harness::report_json(r, false).dump(2) + harness::render_summary_csv(r, false) +
                              harness::render_runs_csv(r, false) + harness::render_trace_csv(r.trace) +
                              harness::render_table(r, false));
        }
        o.require(reports[0] == reports[1] && reports[0] == reports[2],
                  fmt::format("{} reports differ", algorithms::to_string(alg)));
        ++compared;
    }
    if (o.pass) {
        o.detail = fmt::format("{} algorithms, reports identical at 1/4/8 workers", compared);
    }
    return o;
}

// ---- 9

Outcome self_consistency()
{
    Outcome o;
    double worst = 0.0;
    core::RngStream rng(9, {});
    for (const char* preset : {"two_stage_65n", "folded_cascode_180n"}) {
        const auto p = circuit::load_preset(preset);
        for (auto pol : {circuit::Polarity::Nmos, circuit::Polarity::Pmos}) {
            const auto m = circuit::MosModel::from(p.technology, pol);
            for (int i = 0; i < 500; ++i) {
                const double wl = rng.uniform(2.0, 200.0);
                const double id = rng.uniform(1e-6, 1e-3);
                const double vds = rng.uniform(0.05, 1.2);
                const auto bp = circuit::bias_at_current(m, wl, id, vds);
                const double h = 1e-5;
                const double gm = (circuit::drain_current(m, wl, bp.vgs + h, vds) -
                                   circuit::drain_current(m, wl, bp.vgs - h, vds)) / (2 * h);
                const double gds = (circuit::drain_current(m, wl, bp.vgs, vds + h) -
                                    circuit::drain_current(m, wl, bp.vgs, vds - h)) / (2 * h);
                const double ro = 1.0 / gds;
                worst = std::max({worst, std::abs(gm - bp.gm) / bp.gm, std::abs(ro - bp.ro()) / bp.ro()});
            }
        }
    }
    o.require(worst <= 1e-3, fmt::format("derivative error {:.3e}", worst));

    int moved = 0;
    for (const char* preset : {"two_stage_65n", "folded_cascode_180n"}) {
        const auto p = circuit::load_preset(preset);
        const auto b = circuit::derive_bounds(p.spec, p.technology);
        for (int i = 0; i < 5000; ++i) {
            core::Candidate c(std::vector<double>(b.dimension()));
            for (std::size_t d = 0; d < b.dimension(); ++d) {
                c.position[d] = rng.uniform(-b.upper(d), 3.0 * b.upper(d));
            }
            const auto once = circuit::repair_bounds(c, b);
            const auto twice = circuit::repair_bounds(once, b);
            const auto clamped = core::clamp_to_nearest_bound(c.position, b);
            const bool ok = b.contains(once.position) && twice.position == once.position &&
                            clamped == once.position && core::clamp_to_nearest_bound(clamped, b) == clamped;
            moved += ok ? 0 : 1;
        }
    }
    o.require(moved == 0, fmt::format("{} vectors not idempotent", moved));
    if (o.pass) {
        o.detail = fmt::format("2000 operating points, max derivative error {:.2e}; 10000 vectors idempotent", worst);
    }
    return o;
}

// ---- 10

template <class E, class F>
bool throws(F&& f)
{
    try {
        f();
    } catch (const E&) {
        return true;
    } catch (...) {
        return false;
    }
    return false;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome simulator_contract()
{
    Outcome o;
    spice::SimulatorConfig echo;
    echo.executable = kFixtures + "/echo_simulator.sh";

    for (const char* preset : {"two_stage_65n", "folded_cascode_180n"}) {
        const auto problem = circuit::load_preset(preset);
        const auto topology = problem.spec.topology;
        const auto tmpl = spice::NetlistTemplate::builtin(topology);
        const auto box = circuit::search_space(problem.spec, problem.technology);
        core::RngStream rng(10, {});
        int mismatched = 0;
        for (int i = 0; i < 1000; ++i) {
            const auto x = core::sample_uniform(box, rng);
            mismatched += spice::parse_netlist_parameters(spice::emit_netlist(x, tmpl, problem), topology) == x ? 0 : 1;
        }
        o.require(mismatched == 0, fmt::format("{}: {} netlists lose a variable", preset, mismatched));
        core::EvaluationBudget budget;
        const auto x = core::sample_uniform(box, rng);
        const auto echoed = spice::run_simulation(spice::emit_netlist(x, tmpl, problem), echo, budget);
        o.require(spice::parse_netlist_parameters(echoed, topology) == x, "round trip through the stub");
    }

    const auto ts = spice::parse_measurements(read_file(kFixtures + "/two_stage_mabco.out"), Topology::TwoStageMiller);
    o.require(ts.gain_db == 21.9 && ts.f3db == 13.27e6 && ts.ugb == 156e6 && ts.pm == 60.0 && ts.sr == 265.0 &&
                  ts.power == 88.2e-6 && ts.noise_psd == 53.3e-9 && ts.saturation_ok,
              "two-stage fixture values");
    const auto fc = spice::parse_measurements(read_file(kFixtures + "/folded_mabco.out"), Topology::FoldedCascode);
    o.require(fc.gain_db == 40.91 && fc.pm == 89.87 && fc.sr == 21.22 && fc.power == 1.233e-3 && fc.saturation_ok,
              "folded fixture values");
    o.require(throws<spice::MeasurementParseError>([] {
                  (void)spice::parse_measurements(read_file(kFixtures + "/two_stage_no_pm.out"),
                                                  Topology::TwoStageMiller);
              }),
              "missing marker accepted");

    core::EvaluationBudget budget;
    spice::SimulatorConfig sleeper;
    sleeper.executable = kFixtures + "/sleep_simulator.sh";
    sleeper.timeout_seconds = 1.0;
    const auto start = std::chrono::steady_clock::now();
    o.require(throws<spice::SimulationTimeout>([&] { (void)spice::run_simulation("* x\n", sleeper, budget); }),
              "no timeout");
    o.require(std::chrono::steady_clock::now() - start < std::chrono::seconds(5), "timeout too slow");

    spice::SimulatorConfig missing;
    missing.executable = kFixtures + "/no_such_simulator";
    const auto before = budget.evaluations();
    o.require(throws<spice::SimulatorNotFound>([&] { (void)spice::run_simulation("* x\n", missing, budget); }),
              "missing executable not reported");
    o.require(budget.evaluations() == before, "missing executable charged");

    spice::SimulatorConfig failing;
    failing.executable = kFixtures + "/failing_simulator.sh";
    o.require(throws<spice::SimulationFailed>([&] { (void)spice::run_simulation("* x\n", failing, budget); }),
              "nonzero exit accepted");

    if (o.pass) {
        o.detail = "round trip, fixtures, timeout, missing and failing simulator via stubs";
        if (!spice::simulator_available(spice::SimulatorConfig::from_environment())) {
            o.detail += " (no real simulator installed)";
        }
    }
    return o;
}

} // namespace

int main()
{
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"area identity", area_identity},
        {"schedule exactness", schedules},
        {"update-equation oracles", update_oracles},
        {"benchmark convergence", sphere_convergence},
        {"feasibility of final designs", feasibility},
        {"modified beats standard", modified_beats_standard},
        {"PGF effectiveness", pgf_effectiveness},
        {"determinism across workers", determinism},
        {"model self-consistency", self_consistency},
        {"simulator adapter contract", simulator_contract},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = check();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = fmt::format("exception: {}", e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        fmt::print("AC{} {} {} ({:.1f} s): {}\n", index, out.pass ? "PASS" : "FAIL", name, secs, out.detail);
        std::fflush(stdout);
        failures += out.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
