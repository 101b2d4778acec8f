#include "evosizer/circuit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "evosizer/core/sampling.hpp"

namespace evosizer::circuit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegToRad = std::numbers::pi / 180.0;

struct Interval {
    std::string name;
    double lo;
    double hi;
    std::string lo_src;
    std::string hi_src;

    void at_least(double v, const std::string& src)
    {
        if (v > lo) {
            lo = v;
            lo_src = src;
        }
    }
    void at_most(double v, const std::string& src)
    {
        if (v < hi) {
            hi = v;
            hi_src = src;
        }
    }
    void check() const
    {
        if (!(lo <= hi)) {
            throw InfeasibleSpecError(fmt::format("infeasible spec: {} needs >= {:.6g} ({}) but <= {:.6g} ({})", name,
                                                  lo, lo_src, hi, hi_src));
        }
    }
};

struct OverdriveLimit {
    double value;
    std::string source;
};

OverdriveLimit tighter(OverdriveLimit a, OverdriveLimit b)
{
    return b.value < a.value ? b : a;
}

class Deriver {
public:
    Deriver(const ProblemSpec& spec, const TechnologyCard& tech) : spec_(spec), tech_(tech)
    {
        const auto names = decision_names(spec.topology);
        const double l = tech.l_fixed;
        for (std::size_t d = 0; d + 1 < names.size(); ++d) {
            vars_.push_back({names[d], spec.aspect_ratio_min * l, spec.aspect_ratio_max * l, "aspect_ratio_min",
                             "aspect_ratio_max"});
        }
        vars_.push_back({names.back(), spec.ibias_min, spec.ibias_max, "ibias_min", "ibias_max"});
    }

    Interval& bias() { return vars_.back(); }

    // Width interval of a device carrying a current in [i_lo, i_hi] whose
    // overdrive must stay within [vov_min, limit].
    void width_from_overdrive(std::size_t var, Polarity p, double i_lo, double i_hi, const OverdriveLimit& limit)
    {
        Interval& w = vars_[var];
        if (!(limit.value >= spec_.vov_min)) {
            throw InfeasibleSpecError(fmt::format("infeasible spec: {} overdrive must be >= {:.6g} V (vov_min) but "
                                                  "<= {:.6g} V ({})",
                                                  w.name, spec_.vov_min, limit.value, limit.source));
        }
        const double kp = tech_.kp(p);
        const double l = tech_.l_fixed;
        w.at_least(2.0 * i_lo * l / (kp * limit.value * limit.value), limit.source);
        w.at_most(2.0 * i_hi * l / (kp * spec_.vov_min * spec_.vov_min), "vov_min");
    }

    // gm = sqrt(2 kp (W/L) I) >= gm_min at the largest available current.
    void width_from_gm(std::size_t var, Polarity p, double gm_min, double i_hi, const std::string& src)
    {
        vars_[var].at_least(gm_min * gm_min * tech_.l_fixed / (2.0 * tech_.kp(p) * i_hi), src);
    }

    core::DerivedBounds finish(std::vector<BoundProvenance>* provenance) const
    {
        std::vector<double> lo;
        std::vector<double> hi;
        std::vector<std::string> names;
        for (const auto& v : vars_) {
            v.check();
            lo.push_back(v.lo);
            hi.push_back(v.hi);
            names.push_back(v.name);
        }
        if (provenance != nullptr) {
            provenance->clear();
            for (const auto& v : vars_) {
                provenance->push_back({v.lo_src, v.hi_src});
            }
        }
        return core::DerivedBounds(std::move(lo), std::move(hi), std::move(names));
    }

private:
    const ProblemSpec& spec_;
    const TechnologyCard& tech_;
    std::vector<Interval> vars_;
};

std::optional<double> at_least(const ProblemSpec& s, Metric m)
{
    return s.threshold(m, Direction::AtLeast);
}

core::DerivedBounds two_stage_bounds(const ProblemSpec& spec, const TechnologyCard& tech,
                                     std::vector<BoundProvenance>* provenance)
{
    Deriver d(spec, tech);
    const double vdd = tech.vdd;

    // Step 1: bias current. Three branches share the power budget equally.
    if (auto sr = at_least(spec, Metric::SlewRate)) {
        d.bias().at_least(*sr * 1e6 * spec.cc, "slew rate");
    }
    if (auto p = spec.threshold(Metric::Power, Direction::AtMost)) {
        d.bias().at_most(*p / (3.0 * vdd), "power budget");
    }
    d.bias().check();
    const double i_lo = d.bias().lo;
    const double i_hi = d.bias().hi;

    const OverdriveLimit icmr_low{spec.icmr_min - tech.vth_n - spec.vov_min, "icmr_min"};

    // Input pair: ICMR_min leaves room for the tail; UGB sets the minimum gm.
    d.width_from_overdrive(0, Polarity::Nmos, 0.5 * i_lo, 0.5 * i_hi, icmr_low);
    const auto ugb = at_least(spec, Metric::Ugb);
    if (ugb) {
        d.width_from_gm(0, Polarity::Nmos, kTwoPi * *ugb * spec.cc, 0.5 * i_hi, "unity-gain bandwidth");
    }

    // PMOS load: keeps M1 saturated at ICMR_max.
    d.width_from_overdrive(1, Polarity::Pmos, 0.5 * i_lo, 0.5 * i_hi,
                           {vdd - spec.icmr_max + tech.vth_n - tech.vth_p, "icmr_max"});

    // Tail and reference share a gate with M7, so V_out,min limits them too.
    const OverdriveLimit tail = tighter(icmr_low, {spec.vout_min, "vout_min"});
    d.width_from_overdrive(2, Polarity::Nmos, i_lo, i_hi, tail);

    // Second stage: the phase-margin pole needs gm6 >= 2*pi*CL*UGB / tan(90 - PM).
    double i7_lo = i_lo;
    std::optional<double> gm6_min;
    if (auto pm = at_least(spec, Metric::PhaseMargin); pm && ugb && *pm < 90.0) {
        gm6_min = kTwoPi * spec.cl * *ugb / std::tan((90.0 - *pm) * kDegToRad);
        i7_lo = 0.5 * *gm6_min * spec.vov_min;
    }
    const double i7_hi = i_hi;
    d.width_from_overdrive(3, Polarity::Pmos, i7_lo, i7_hi, {vdd - spec.vout_max, "vout_max"});
    if (gm6_min) {
        d.width_from_gm(3, Polarity::Pmos, *gm6_min, i7_hi, "phase margin");
    }
    d.width_from_overdrive(4, Polarity::Nmos, i7_lo, i7_hi, tail);
    return d.finish(provenance);
}

core::DerivedBounds folded_bounds(const ProblemSpec& spec, const TechnologyCard& tech,
                                  std::vector<BoundProvenance>* provenance)
{
    Deriver d(spec, tech);
    const double vdd = tech.vdd;
    const double hr = spec.cascode_headroom;

    // The cascode branches carry half of I_bias, so slewing needs 2*SR*CL.
    if (auto sr = at_least(spec, Metric::SlewRate)) {
        d.bias().at_least(2.0 * *sr * 1e6 * spec.cl, "slew rate");
    }
    if (auto p = spec.threshold(Metric::Power, Direction::AtMost)) {
        d.bias().at_most(*p / (4.0 * vdd), "power budget");
    }
    d.bias().check();
    const double i_lo = d.bias().lo;
    const double i_hi = d.bias().hi;

    const OverdriveLimit icmr_low{spec.icmr_min - tech.vth_n - spec.vov_min, "icmr_min"};
    d.width_from_overdrive(0, Polarity::Nmos, 0.5 * i_lo, 0.5 * i_hi, icmr_low);
    if (auto ugb = at_least(spec, Metric::Ugb)) {
        d.width_from_gm(0, Polarity::Nmos, kTwoPi * *ugb * spec.cl, 0.5 * i_hi, "unity-gain bandwidth");
    }

    // M3/M4 feed the fold node, which must stay above ICMR_max - V_thn.
    d.width_from_overdrive(1, Polarity::Pmos, i_lo, i_hi, {vdd - spec.icmr_max + tech.vth_n - hr, "icmr_max"});
    d.width_from_overdrive(2, Polarity::Nmos, i_lo, i_hi, icmr_low);

    const OverdriveLimit low_swing{spec.vout_min - hr - spec.vov_min, "vout_min"};
    d.width_from_overdrive(3, Polarity::Nmos, 0.5 * i_lo, 0.5 * i_hi, low_swing);
    d.width_from_overdrive(4, Polarity::Nmos, 0.5 * i_lo, 0.5 * i_hi, low_swing);
    d.width_from_overdrive(5, Polarity::Pmos, 0.5 * i_lo, 0.5 * i_hi,
                           {vdd - spec.vout_max - spec.vov_min - hr, "vout_max"});
    return d.finish(provenance);
}

} // namespace

core::SearchSpace search_space(const ProblemSpec& spec, const TechnologyCard& tech)
{
    const auto names = decision_names(spec.topology);
    std::vector<double> lo(names.size(), spec.aspect_ratio_min * tech.l_fixed);
    std::vector<double> hi(names.size(), spec.aspect_ratio_max * tech.l_fixed);
    lo.back() = spec.ibias_min;
    hi.back() = spec.ibias_max;
    return core::SearchSpace(std::move(lo), std::move(hi), names);
}

core::DerivedBounds derive_bounds(const ProblemSpec& spec, const TechnologyCard& tech,
                                  std::vector<BoundProvenance>* provenance)
{
    spec.validate();
    tech.validate();
    return spec.topology == Topology::TwoStageMiller ? two_stage_bounds(spec, tech, provenance)
                                                     : folded_bounds(spec, tech, provenance);
}

core::Candidate generate_candidate_pgf(const core::DerivedBounds& bounds, core::RngStream& rng)
{
    return core::Candidate(core::sample_uniform(bounds, rng));
}

core::Candidate repair_bounds(core::Candidate candidate, const core::DerivedBounds& bounds)
{
    auto repaired = core::clamp_to_nearest_bound(candidate.position, bounds);
    if (repaired != candidate.position) {
        candidate.position = std::move(repaired);
        candidate.invalidate();
    }
    return candidate;
}

} // namespace evosizer::circuit
