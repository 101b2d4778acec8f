#include "evosizer/circuit/amplifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "evosizer/circuit/mosfet.hpp"
#include "evosizer/core/errors.hpp"

namespace evosizer::circuit {

namespace {

constexpr double kBoltzmann = 1.380649e-23;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
// Fixed-point passes for the DC node voltages; V_ov depends on V_DS only
// through the small channel-length term, so this converges quickly.
constexpr int kOperatingPointPasses = 6;
// Drain junction plus overlap capacitance as a fraction of Cox*W*L.
constexpr double kDrainCapFraction = 0.5;

void check_position(std::span<const double> x, Topology t)
{
    require(x.size() == decision_dimension(t),
            fmt::format("{}: position has {} variables, expected {}", to_string(t), x.size(), decision_dimension(t)));
    const auto names = decision_names(t);
    for (std::size_t d = 0; d < x.size(); ++d) {
        require(x[d] > 0.0 && std::isfinite(x[d]),
                fmt::format("{}: {} must be positive (got {})", to_string(t), names[d], x[d]));
    }
}

double thermal_noise_psd(double temperature, double gm_input, double extra_gm)
{
    const double psd = 16.0 * kBoltzmann * temperature / (3.0 * gm_input) * (1.0 + extra_gm / gm_input);
    return std::sqrt(psd);
}

void merge_margins(std::vector<DeviceMargin>& worst, const std::vector<DeviceMargin>& current)
{
    if (worst.empty()) {
        worst = current;
        return;
    }
    for (std::size_t i = 0; i < worst.size(); ++i) {
        worst[i].margin = std::min(worst[i].margin, current[i].margin);
    }
}

// ---------------------------------------------------------------- two-stage

struct TwoStageOp {
    BiasPoint m1, m2, m3, m4, m5, m6, m7, m8;

    [[nodiscard]] std::vector<DeviceMargin> margins() const
    {
        return {{"m1", m1.saturation_margin()}, {"m2", m2.saturation_margin()}, {"m3", m3.saturation_margin()},
                {"m4", m4.saturation_margin()}, {"m5", m5.saturation_margin()}, {"m6", m6.saturation_margin()},
                {"m7", m7.saturation_margin()}, {"m8", m8.saturation_margin()}};
    }
};

TwoStageOp solve_two_stage(std::span<const double> x, const TechnologyCard& tech, double vcm, double vout)
{
    const MosModel nmos = MosModel::from(tech, Polarity::Nmos);
    const MosModel pmos = MosModel::from(tech, Polarity::Pmos);
    const double l = tech.l_fixed;
    const double wl12 = x[0] / l;
    const double wl34 = x[1] / l;
    const double wl58 = x[2] / l;
    const double wl6 = x[3] / l;
    const double wl7 = x[4] / l;
    const double ibias = x[5];

    const double i8 = ibias;
    const double i5 = ibias; // W5 == W8
    const double i7 = ibias * wl7 / wl58;
    const double i6 = i7;
    const double i1 = 0.5 * i5;

    TwoStageOp op;
    double vds8 = 0.0;
    double vsd3 = 0.0;
    double vds1 = 0.0;
    double vds2 = 0.0;
    for (int pass = 0; pass < kOperatingPointPasses; ++pass) {
        op.m8 = bias_at_current(nmos, wl58, i8, vds8);
        vds8 = op.m8.vgs;
        op.m3 = bias_at_current(pmos, wl34, i1, vsd3);
        vsd3 = op.m3.vgs;
        op.m6 = bias_at_current(pmos, wl6, i6, tech.vdd - vout);
        op.m1 = bias_at_current(nmos, wl12, i1, vds1);
        const double vs = vcm - op.m1.vgs;
        vds1 = (tech.vdd - op.m3.vgs) - vs;
        vds2 = (tech.vdd - op.m6.vgs) - vs;
        op.m2 = bias_at_current(nmos, wl12, i1, vds2);
        op.m4 = bias_at_current(pmos, wl34, i1, op.m6.vgs);
        op.m5 = bias_at_current(nmos, wl58, i5, vs);
        op.m7 = bias_at_current(nmos, wl7, i7, vout);
    }
    return op;
}

// ----------------------------------------------------------- folded cascode

struct FoldedOp {
    BiasPoint m1, m2, m3, m4, mbp, mbn, m5, m6, m7, m8, m9, m10, m11;

    [[nodiscard]] std::vector<DeviceMargin> margins() const
    {
        return {{"m1", m1.saturation_margin()},   {"m2", m2.saturation_margin()},   {"m3", m3.saturation_margin()},
                {"m4", m4.saturation_margin()},   {"mbp", mbp.saturation_margin()}, {"mbn", mbn.saturation_margin()},
                {"m5", m5.saturation_margin()},   {"m6", m6.saturation_margin()},   {"m7", m7.saturation_margin()},
                {"m8", m8.saturation_margin()},   {"m9", m9.saturation_margin()},   {"m10", m10.saturation_margin()},
                {"m11", m11.saturation_margin()}};
    }
};

FoldedOp solve_folded(std::span<const double> x, const ProblemSpec& spec, const TechnologyCard& tech, double vcm,
                      double vout, double i_cascode)
{
    const MosModel nmos = MosModel::from(tech, Polarity::Nmos);
    const MosModel pmos = MosModel::from(tech, Polarity::Pmos);
    const double l = tech.l_fixed;
    const double wl12 = x[0] / l;
    const double wl34 = x[1] / l;
    const double wl5 = x[2] / l;
    const double wl67 = x[3] / l;
    const double wl89 = x[4] / l;
    const double wl1011 = x[5] / l;
    const double ibias = x[6];
    const double hr = spec.cascode_headroom;

    const double i5 = ibias; // W5 == Wbn
    const double i4 = ibias; // W3 == W4 == Wbp
    const double i1 = 0.5 * i5;

    FoldedOp op;
    double vgs_bn = 0.0;
    double vsg_bp = 0.0;
    double vds8 = 0.0;
    double vsd4 = 0.0;
    double vds1 = 0.0;
    for (int pass = 0; pass < kOperatingPointPasses; ++pass) {
        op.mbn = bias_at_current(nmos, wl5, ibias, vgs_bn);
        vgs_bn = op.mbn.vgs;
        op.mbp = bias_at_current(pmos, wl34, ibias, vsg_bp);
        vsg_bp = op.mbp.vgs;

        op.m8 = bias_at_current(nmos, wl89, i_cascode, vds8);
        vds8 = op.m8.vov + hr;
        op.m9 = bias_at_current(nmos, wl89, i_cascode, vds8);
        op.m4 = bias_at_current(pmos, wl34, i4, vsd4);
        vsd4 = op.m4.vov + hr;
        op.m3 = bias_at_current(pmos, wl34, i4, vsd4);

        const double vfold = tech.vdd - vsd4;
        op.m1 = bias_at_current(nmos, wl12, i1, vds1);
        const double vs = vcm - op.m1.vgs;
        vds1 = vfold - vs;
        op.m2 = bias_at_current(nmos, wl12, i1, vds1);
        op.m5 = bias_at_current(nmos, wl5, i5, vs);

        op.m11 = bias_at_current(pmos, wl1011, i_cascode, vfold - vout);
        op.m7 = bias_at_current(nmos, wl67, i_cascode, vout - vds8);
        // Low-voltage cascode mirror: M8/M9 gates tie to the M6/M10 drain node.
        const double vgate8 = op.m8.vgs;
        op.m6 = bias_at_current(nmos, wl67, i_cascode, vgate8 - vds8);
        op.m10 = bias_at_current(pmos, wl1011, i_cascode, vfold - vgate8);
    }
    return op;
}

} // namespace

PerformanceReport evaluate_two_stage(std::span<const double> x, const ProblemSpec& spec, const TechnologyCard& tech)
{
    require(spec.topology == Topology::TwoStageMiller, "evaluate_two_stage: spec is not a two-stage problem");
    check_position(x, Topology::TwoStageMiller);

    PerformanceReport r;
    r.topology = Topology::TwoStageMiller;

    const TwoStageOp low = solve_two_stage(x, tech, spec.icmr_min, spec.vout_min);
    const TwoStageOp high = solve_two_stage(x, tech, spec.icmr_max, spec.vout_max);
    merge_margins(r.device_margins, low.margins());
    merge_margins(r.device_margins, high.margins());
    r.saturation_ok = std::all_of(r.device_margins.begin(), r.device_margins.end(),
                                  [](const DeviceMargin& m) { return m.margin >= 0.0; });

    const TwoStageOp nom =
        solve_two_stage(x, tech, 0.5 * (spec.icmr_min + spec.icmr_max), 0.5 * (spec.vout_min + spec.vout_max));
    const double a1 = nom.m1.gm / (nom.m2.gds + nom.m4.gds);
    const double a2 = nom.m6.gm / (nom.m6.gds + nom.m7.gds);
    const double av = a1 * a2;
    r.gain_db = 20.0 * std::log10(av);
    r.ugb = nom.m1.gm / (kTwoPi * spec.cc);
    r.f3db = r.ugb / av;
    const double p2 = nom.m6.gm / (kTwoPi * spec.cl);
    r.pm = 90.0 - std::atan(r.ugb / p2) * kRadToDeg;
    r.sr = nom.m5.id / spec.cc * 1e-6;
    r.power = tech.vdd * (nom.m8.id + nom.m5.id + nom.m6.id);
    r.noise_psd = thermal_noise_psd(tech.temperature, nom.m1.gm, nom.m3.gm);

    const auto widths = expand_widths(Topology::TwoStageMiller, x);
    const std::vector<double> lengths(widths.size(), tech.l_fixed);
    r.area = area_fitness(widths, lengths);
    annotate_margins(r, spec);
    return r;
}

PerformanceReport evaluate_folded_cascode(std::span<const double> x, const ProblemSpec& spec,
                                          const TechnologyCard& tech)
{
    require(spec.topology == Topology::FoldedCascode, "evaluate_folded_cascode: spec is not a folded-cascode problem");
    check_position(x, Topology::FoldedCascode);

    PerformanceReport r;
    r.topology = Topology::FoldedCascode;
    const auto widths = expand_widths(Topology::FoldedCascode, x);
    const std::vector<double> lengths(widths.size(), tech.l_fixed);
    r.area = area_fitness(widths, lengths);

    const double ibias = x[6];
    const double i_tail = ibias;
    const double i_cascode = ibias - 0.5 * i_tail;
    if (!(i_cascode > 0.0)) {
        // Cascode branches starve: the output devices are cut off.
        r.saturation_ok = false;
        for (const auto& name : device_names(Topology::FoldedCascode)) {
            r.device_margins.push_back({name, -1.0});
        }
        r.power = tech.vdd * 4.0 * ibias;
        annotate_margins(r, spec);
        return r;
    }

    const FoldedOp low = solve_folded(x, spec, tech, spec.icmr_min, spec.vout_min, i_cascode);
    const FoldedOp high = solve_folded(x, spec, tech, spec.icmr_max, spec.vout_max, i_cascode);
    merge_margins(r.device_margins, low.margins());
    merge_margins(r.device_margins, high.margins());
    r.saturation_ok = std::all_of(r.device_margins.begin(), r.device_margins.end(),
                                  [](const DeviceMargin& m) { return m.margin >= 0.0; });

    const FoldedOp nom = solve_folded(x, spec, tech, 0.5 * (spec.icmr_min + spec.icmr_max),
                                      0.5 * (spec.vout_min + spec.vout_max), i_cascode);
    const double r_fold = 1.0 / (nom.m4.gds + nom.m2.gds);
    const double r_up = nom.m11.ro() + r_fold + nom.m11.gm * nom.m11.ro() * r_fold;
    const double r_down = nom.m7.ro() + nom.m9.ro() + nom.m7.gm * nom.m7.ro() * nom.m9.ro();
    const double r_out = r_up * r_down / (r_up + r_down);
    const double av = nom.m1.gm * r_out;
    r.gain_db = 20.0 * std::log10(av);
    r.ugb = nom.m1.gm / (kTwoPi * spec.cl);
    r.f3db = 1.0 / (kTwoPi * r_out * spec.cl);
    const double l = tech.l_fixed;
    const double c_fold = (2.0 / 3.0) * tech.cox * x[5] * l + kDrainCapFraction * tech.cox * l * (x[1] + x[0]);
    const double p_fold = nom.m11.gm / (kTwoPi * c_fold);
    r.pm = 90.0 - std::atan(r.ugb / p_fold) * kRadToDeg;
    r.sr = std::min(nom.m5.id, i_cascode) / spec.cl * 1e-6;
    r.power = tech.vdd * (nom.mbn.id + nom.mbp.id + nom.m3.id + nom.m4.id);
    r.noise_psd = thermal_noise_psd(tech.temperature, nom.m1.gm, nom.m4.gm + nom.m9.gm);
    annotate_margins(r, spec);
    return r;
}

PerformanceReport evaluate_circuit(std::span<const double> position, const ProblemSpec& spec,
                                   const TechnologyCard& tech)
{
    return spec.topology == Topology::TwoStageMiller ? evaluate_two_stage(position, spec, tech)
                                                     : evaluate_folded_cascode(position, spec, tech);
}

} // namespace evosizer::circuit
