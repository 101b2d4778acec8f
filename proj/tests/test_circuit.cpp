#include <doctest.h>

#include <cmath>

#include "evosizer/circuit/amplifiers.hpp"
#include "evosizer/circuit/analytic_evaluator.hpp"
#include "evosizer/circuit/bounds.hpp"
#include "evosizer/circuit/mosfet.hpp"
#include "evosizer/circuit/spec_file.hpp"
#include "evosizer/circuit/survivability.hpp"
#include "evosizer/core/errors.hpp"

using namespace evosizer;
using namespace evosizer::circuit;

namespace {

// Reference sizings (nm, uA).
const std::vector<double> kTwoStageMabco{259e-9, 797e-9, 121e-9, 1114e-9, 183e-9, 28.8e-6};
const std::vector<double> kFoldedMabco{8686e-9, 3417e-9, 1118e-9, 805e-9, 367e-9, 6156e-9, 100e-6};
const std::vector<double> kFoldedMgwo{8690e-9, 3367e-9, 1133e-9, 801e-9, 367e-9, 6220e-9, 100e-6};

double area_um2(Topology t, const std::vector<double>& x, double l)
{
    const auto w = expand_widths(t, x);
    return area_fitness(w, std::vector<double>(w.size(), l)) * 1e12;
}

std::vector<double> find_feasible(const AnalyticCircuitEvaluator& ev, std::uint64_t seed)
{
    core::RngStream rng(seed, {});
    for (int i = 0; i < 200000; ++i) {
        auto c = generate_candidate_pgf(ev.derived_bounds(), rng);
        if (ev.assess(c.position).feasible) {
            return c.position;
        }
    }
    FAIL("no feasible sample");
    return {};
}

} // namespace

TEST_CASE("area of the reference sizings")
{
    CHECK(area_um2(Topology::TwoStageMiller, kTwoStageMabco, 60e-9) == doctest::Approx(0.21906).epsilon(1e-9));
    CHECK(area_um2(Topology::FoldedCascode, kFoldedMabco, 180e-9) == doctest::Approx(8.01270).epsilon(1e-9));
    CHECK(std::abs(area_um2(Topology::FoldedCascode, kFoldedMgwo, 180e-9) - 8.014) <= 0.005);
}

TEST_CASE("expanded widths follow device order")
{
    const auto w = expand_widths(Topology::TwoStageMiller, kTwoStageMabco);
    REQUIRE(w.size() == 8);
    CHECK(w == std::vector<double>{259e-9, 259e-9, 797e-9, 797e-9, 121e-9, 1114e-9, 183e-9, 121e-9});
    CHECK(expand_widths(Topology::FoldedCascode, kFoldedMabco).size() == device_names(Topology::FoldedCascode).size());
    CHECK(decision_dimension(Topology::TwoStageMiller) == 6);
    CHECK(decision_dimension(Topology::FoldedCascode) == 7);
}

TEST_CASE("quantities carry SI prefixes")
{
    CHECK(parse_quantity("100 V/us", "V/s") == doctest::Approx(1e8));
    CHECK(parse_quantity("280 uA/V^2", "A/V^2") == doctest::Approx(280e-6));
    CHECK(parse_quantity("200 fF", "F") == doctest::Approx(200e-15));
    CHECK(parse_quantity("1 MHz", "Hz") == doctest::Approx(1e6));
    CHECK(parse_quantity("2", "") == 2.0);
    CHECK_THROWS_AS((void)parse_quantity("200 fF", "V"), ConfigError);
    CHECK_THROWS_AS((void)parse_quantity("abc V", "V"), ConfigError);
}

TEST_CASE("presets load and render back")
{
    for (const auto& name : preset_names()) {
        const auto p = load_preset(name);
        CHECK(p.spec.name == name);
        CHECK(parse_problem_text(render_problem_text(p)) == p);
    }
    CHECK(is_preset("two_stage_65n"));
    CHECK_FALSE(is_preset("nope"));
    CHECK_THROWS_AS((void)load_problem("no/such/file.spec"), ConfigError);
    CHECK_THROWS_AS((void)parse_problem_text("[problem]\ntopology = hexagon\n"), ConfigError);
}

TEST_CASE("two-stage bounds from slew rate, power and aspect ratio")
{
    const auto p = load_preset("two_stage_65n");
    std::vector<BoundProvenance> prov;
    const auto b = derive_bounds(p.spec, p.technology, &prov);
    const auto box = search_space(p.spec, p.technology);
    // SR >= 100 V/us with Cc = 60 fF needs 6 uA.
    CHECK(b.lower(5) == doctest::Approx(6e-6).epsilon(1e-12));
    CHECK(prov[5].lower == "slew rate");
    // 400 uW at 1.1 V is 363.6 uA for the three branches.
    CHECK(3.0 * b.upper(5) == doctest::Approx(363.636e-6).epsilon(1e-5));
    CHECK(prov[5].upper == "power budget");
    CHECK(box.lower(0) == doctest::Approx(120e-9));
    CHECK(box.upper(0) == doctest::Approx(12e-6));
    CHECK(b.subset_of(box));
    CHECK(b.names() == decision_names(Topology::TwoStageMiller));
}

TEST_CASE("folded cascode bounds sit inside the box")
{
    const auto p = load_preset("folded_cascode_180n");
    const auto b = derive_bounds(p.spec, p.technology);
    CHECK(b.subset_of(search_space(p.spec, p.technology)));
    CHECK(b.lower(6) == doctest::Approx(2.0 * 20e6 * 5e-12));
}

TEST_CASE("an impossible spec names the variable and both constraints")
{
    auto p = load_preset("two_stage_65n");
    for (auto& c : p.spec.constraints) {
        if (c.metric == Metric::SlewRate) {
            c.threshold = 1e5;
        }
    }
    try {
        (void)derive_bounds(p.spec, p.technology);
        FAIL("expected InfeasibleSpecError");
    } catch (const InfeasibleSpecError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("ibias") != std::string::npos);
        CHECK(msg.find("slew rate") != std::string::npos);
    }
}

TEST_CASE("repair bounds is idempotent and keeps in-range evaluations")
{
    const auto p = load_preset("two_stage_65n");
    const auto b = derive_bounds(p.spec, p.technology);
    core::RngStream rng(11, {});
    for (int i = 0; i < 2000; ++i) {
        core::Candidate c(std::vector<double>(6));
        for (std::size_t d = 0; d < 6; ++d) {
            c.position[d] = rng.uniform(-2.0 * b.upper(d), 3.0 * b.upper(d));
        }
        c.fitness = 1.0;
        const auto once = repair_bounds(c, b);
        REQUIRE(b.contains(once.position));
        const auto twice = repair_bounds(once, b);
        CHECK(twice.position == once.position);
    }
    auto inside = generate_candidate_pgf(b, rng);
    inside.fitness = 2.0;
    CHECK(repair_bounds(inside, b).evaluated());
}

TEST_CASE("square-law derivatives match finite differences")
{
    const MosModel m{150e-6, 0.28, 2.0};
    core::RngStream rng(5, {});
    for (int i = 0; i < 1000; ++i) {
        const double wl = rng.uniform(2.0, 200.0);
        const double id = rng.uniform(1e-6, 1e-3);
        const double vds = rng.uniform(0.05, 1.0);
        const auto bp = bias_at_current(m, wl, id, vds);
        REQUIRE(drain_current(m, wl, bp.vgs, vds) == doctest::Approx(id).epsilon(1e-9));
        const double h = 1e-5;
        const double gm = (drain_current(m, wl, bp.vgs + h, vds) - drain_current(m, wl, bp.vgs - h, vds)) / (2 * h);
        const double gds = (drain_current(m, wl, bp.vgs, vds + h) - drain_current(m, wl, bp.vgs, vds - h)) / (2 * h);
        CHECK(std::abs(gm - bp.gm) <= 1e-3 * bp.gm);
        CHECK(std::abs(gds - bp.gds) <= 1e-3 * bp.gds);
    }
}

TEST_CASE("doubling Cc halves UGB and slew rate")
{
    const auto p = load_preset("two_stage_65n");
    auto wide = p.spec;
    wide.cc *= 2.0;
    const auto a = evaluate_circuit(kTwoStageMabco, p.spec, p.technology);
    const auto b = evaluate_circuit(kTwoStageMabco, wide, p.technology);
    CHECK(b.ugb == doctest::Approx(0.5 * a.ugb).epsilon(1e-12));
    CHECK(b.sr == doctest::Approx(0.5 * a.sr).epsilon(1e-12));
}

TEST_CASE("scaling widths and bias together keeps every overdrive")
{
    for (const char* name : {"two_stage_65n", "folded_cascode_180n"}) {
        const auto p = load_preset(name);
        const auto x = p.spec.topology == Topology::TwoStageMiller ? kTwoStageMabco : kFoldedMabco;
        auto y = x;
        for (double& v : y) {
            v *= 3.0;
        }
        const auto a = evaluate_circuit(x, p.spec, p.technology);
        const auto b = evaluate_circuit(y, p.spec, p.technology);
        REQUIRE(a.device_margins.size() == b.device_margins.size());
        for (std::size_t i = 0; i < a.device_margins.size(); ++i) {
            CHECK(b.device_margins[i].margin == doctest::Approx(a.device_margins[i].margin).epsilon(1e-9));
        }
    }
}

TEST_CASE("position contract")
{
    const auto p = load_preset("two_stage_65n");
    CHECK_THROWS_AS((void)evaluate_circuit(std::vector<double>(5, 1e-6), p.spec, p.technology), ContractViolation);
    auto bad = kTwoStageMabco;
    bad[2] = -1.0;
    CHECK_THROWS_AS((void)evaluate_circuit(bad, p.spec, p.technology), ContractViolation);
}

TEST_CASE("survivability test")
{
    const AnalyticCircuitEvaluator ev(load_preset("two_stage_65n"));
    const auto x = find_feasible(ev, 3);
    auto r = ev.report(x);
    auto verdict = survivability_test(r, ev.problem().spec);
    CHECK(verdict.pass);
    CHECK(verdict.violations.empty());
    CHECK(r.saturation_ok);

    auto nan_pm = r;
    nan_pm.pm = std::nan("");
    annotate_margins(nan_pm, ev.problem().spec);
    CHECK_FALSE(survivability_test(nan_pm, ev.problem().spec).pass);

    auto unsat = r;
    unsat.device_margins[0].margin = -0.01;
    unsat.saturation_ok = false;
    const auto v = survivability_test(unsat, ev.problem().spec);
    CHECK_FALSE(v.pass);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].name == "saturation");
    CHECK(v.violations[0].margin == doctest::Approx(-0.01));

    const auto folded = load_preset("folded_cascode_180n");
    CHECK_THROWS_AS((void)survivability_test(r, folded.spec), ContractViolation);
}

TEST_CASE("analytic evaluator charges one unit per call")
{
    const AnalyticCircuitEvaluator ev(load_preset("folded_cascode_180n"));
    core::EvaluationBudget budget;
    core::Candidate c(kFoldedMabco);
    ev.evaluate(c, budget);
    CHECK(budget.evaluations() == 1);
    CHECK(c.evaluated());
    CHECK(*c.fitness == doctest::Approx(8.0127e-12).epsilon(1e-9));
    CHECK(ev.name() == "analytic:folded_cascode_180n");
}
