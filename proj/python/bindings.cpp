#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ambc/analytic.hpp"
#include "ambc/campaign.hpp"
#include "ambc/config.hpp"
#include "ambc/model.hpp"
#include "ambc/montecarlo.hpp"
#include "ambc/waveform.hpp"

namespace py = pybind11;
using namespace ambc;

namespace {

cli::CampaignConfig config_from_text(const std::string& text) {
    return cli::parse_config_text(text, "<python>");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rate analysis and link-level simulation for a mutualistic "
              "cooperative ambient-backscatter link under hardware impairments";

    py::register_exception<cli::ConfigError>(m, "ConfigError");

    // ---- model ----
    py::class_<ImpairmentLevels>(m, "ImpairmentLevels")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("kappa_p"), py::arg("kappa_r"))
        .def_static("ideal", &ImpairmentLevels::ideal)
        .def_readonly("kappa_p", &ImpairmentLevels::kappa_p)
        .def_readonly("kappa_r", &ImpairmentLevels::kappa_r)
        .def_readonly("kappa", &ImpairmentLevels::kappa)
        .def("__repr__", [](const ImpairmentLevels& lv) {
            std::ostringstream out;
            out << "ImpairmentLevels(kappa_p=" << lv.kappa_p
                << ", kappa_r=" << lv.kappa_r << ", kappa=" << lv.kappa << ")";
            return out.str();
        });

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<double, double, int, double, double, ImpairmentLevels,
                      double>(),
             py::arg("p0_mw"), py::arg("bandwidth_hz"),
             py::arg("spreading_factor"), py::arg("beta"),
             py::arg("noise_power_mw"),
             py::arg("impairments") = ImpairmentLevels{},
             py::arg("block_duration_s") = 1.0)
        .def("with_impairments", &SystemParams::with_impairments)
        .def_readonly("p0_mw", &SystemParams::p0_mw)
        .def_readonly("bandwidth_hz", &SystemParams::bandwidth_hz)
        .def_readonly("spreading_factor", &SystemParams::spreading_factor)
        .def_readonly("beta", &SystemParams::beta)
        .def_readonly("noise_power_mw", &SystemParams::noise_power_mw)
        .def_readonly("impairments", &SystemParams::impairments)
        .def_readonly("block_duration_s", &SystemParams::block_duration_s);

    py::class_<ChannelState>(m, "ChannelState")
        .def(py::init<double, double, double>(), py::arg("h"), py::arg("f"),
             py::arg("g"))
        .def_readonly("h", &ChannelState::h)
        .def_readonly("f", &ChannelState::f)
        .def_readonly("g", &ChannelState::g)
        .def("__repr__", [](const ChannelState& ch) {
            std::ostringstream out;
            out << "ChannelState(h=" << ch.h << ", f=" << ch.f << ", g=" << ch.g
                << ")";
            return out.str();
        });

    py::class_<RateReport>(m, "RateReport")
        .def_readonly("c_p_analytic", &RateReport::c_p_analytic)
        .def_readonly("c_p_mc", &RateReport::c_p_mc)
        .def_readonly("c_p_mc_stderr", &RateReport::c_p_mc_stderr)
        .def_readonly("c_p_noncoop", &RateReport::c_p_noncoop)
        .def_readonly("c_s", &RateReport::c_s)
        .def_readonly("c_p_ideal", &RateReport::c_p_ideal)
        .def_readonly("c_s_ideal", &RateReport::c_s_ideal)
        .def_readonly("ceiling_p", &RateReport::ceiling_p)
        .def_readonly("ceiling_s", &RateReport::ceiling_s);

    m.def("aggregate_kappa", &aggregate_kappa, py::arg("kappa_p"),
          py::arg("kappa_r"));
    m.def("primary_sinr_conditional", &primary_sinr_conditional,
          py::arg("cs_mag_sq"), py::arg("params"), py::arg("channel"));
    m.def("primary_rate_conditional", &primary_rate_conditional,
          py::arg("cs_mag_sq"), py::arg("params"), py::arg("channel"));
    m.def("backscatter_sinr", &backscatter_sinr, py::arg("params"),
          py::arg("channel"));
    m.def("backscatter_rate", &backscatter_rate, py::arg("params"),
          py::arg("channel"));
    m.def("ideal_primary_rate_conditional", &ideal_primary_rate_conditional,
          py::arg("cs_mag_sq"), py::arg("params"), py::arg("channel"));
    m.def("ideal_backscatter_rate", &ideal_backscatter_rate, py::arg("params"),
          py::arg("channel"));
    m.def("primary_rate_ceiling", &primary_rate_ceiling, py::arg("params"));
    m.def("backscatter_rate_ceiling", &backscatter_rate_ceiling,
          py::arg("params"), py::arg("channel"));
    m.def("noncooperation_rate", &noncooperation_rate, py::arg("params"),
          py::arg("channel"));

    // ---- analytic ----
    py::class_<ClosedFormInputs>(m, "ClosedFormInputs")
        .def(py::init<double, double, double, double, double>(), py::arg("a"),
             py::arg("b"), py::arg("kappa"), py::arg("sigma_sq"),
             py::arg("bandwidth_hz"))
        .def_static("from_params", &ClosedFormInputs::from, py::arg("params"),
                    py::arg("channel"))
        .def_readonly("a", &ClosedFormInputs::a)
        .def_readonly("b", &ClosedFormInputs::b)
        .def_readonly("kappa", &ClosedFormInputs::kappa)
        .def_readonly("sigma_sq", &ClosedFormInputs::sigma_sq)
        .def_readonly("bandwidth_hz", &ClosedFormInputs::bandwidth_hz);

    m.def("exp_integral_ei", &exp_integral_ei, py::arg("x"));
    m.def("scaled_ei_product", &scaled_ei_product, py::arg("z"));
    m.def("primary_rate_closed_form", &primary_rate_closed_form,
          py::arg("inputs"));
    m.def("mutualism_gain", &mutualism_gain, py::arg("inputs"));
    m.def("gain_degradation_check", &gain_degradation_check, py::arg("inputs"));
    m.attr("CLOSED_FORM_CS_ASSUMPTION") = kClosedFormCsAssumption;

    // ---- montecarlo ----
    py::class_<mc::Geometry>(m, "Geometry")
        .def(py::init([](double d_ps_m, double d_sr_m, double d_pr_m,
                         double alpha_ps, double alpha_sr, double alpha_pr) {
                 mc::Geometry g{d_ps_m, d_sr_m, d_pr_m, alpha_ps, alpha_sr,
                                alpha_pr};
                 g.validate();
                 return g;
             }),
             py::arg("d_ps_m") = 3.0, py::arg("d_sr_m") = 3.0,
             py::arg("d_pr_m") = 8.0, py::arg("alpha_ps") = 2.7,
             py::arg("alpha_sr") = 2.7, py::arg("alpha_pr") = 3.0)
        .def_readonly("d_ps_m", &mc::Geometry::d_ps_m)
        .def_readonly("d_sr_m", &mc::Geometry::d_sr_m)
        .def_readonly("d_pr_m", &mc::Geometry::d_pr_m)
        .def_readonly("alpha_ps", &mc::Geometry::alpha_ps)
        .def_readonly("alpha_sr", &mc::Geometry::alpha_sr)
        .def_readonly("alpha_pr", &mc::Geometry::alpha_pr);

    py::enum_<mc::FadingKind>(m, "FadingKind")
        .value("rayleigh", mc::FadingKind::rayleigh)
        .value("fixed_unit", mc::FadingKind::fixed_unit);

    py::class_<mc::FadingModel>(m, "FadingModel")
        .def(py::init([](mc::FadingKind kind) { return mc::FadingModel{kind}; }),
             py::arg("kind") = mc::FadingKind::rayleigh)
        .def_readonly("kind", &mc::FadingModel::kind);

    py::class_<mc::CsDistribution>(m, "CsDistribution")
        .def_static("complex_gaussian", &mc::CsDistribution::complex_gaussian)
        .def_static("psk", &mc::CsDistribution::psk, py::arg("order"))
        .def_static("constant_envelope", &mc::CsDistribution::constant_envelope)
        .def_property_readonly("name", &mc::CsDistribution::name);

    py::class_<mc::McEstimate>(m, "McEstimate")
        .def_readonly("mean", &mc::McEstimate::mean)
        .def_readonly("std_error", &mc::McEstimate::std_error)
        .def_readonly("n_samples", &mc::McEstimate::n_samples)
        .def_readonly("seed", &mc::McEstimate::seed)
        .def("__repr__", [](const mc::McEstimate& est) {
            std::ostringstream out;
            out << "McEstimate(mean=" << est.mean << ", std_error="
                << est.std_error << ", n_samples=" << est.n_samples << ")";
            return out.str();
        });

    py::class_<mc::Theorem1Result>(m, "Theorem1Result")
        .def_readonly("noncoop", &mc::Theorem1Result::noncoop)
        .def_readonly("analytic", &mc::Theorem1Result::analytic)
        .def_readonly("mc", &mc::Theorem1Result::mc)
        .def_readonly("margin", &mc::Theorem1Result::margin)
        .def_readonly("strict", &mc::Theorem1Result::strict)
        .def_readonly("boundary", &mc::Theorem1Result::boundary);

    py::class_<mc::CeilingPoint>(m, "CeilingPoint")
        .def_readonly("p0_mw", &mc::CeilingPoint::p0_mw)
        .def_readonly("c_p", &mc::CeilingPoint::c_p)
        .def_readonly("c_s", &mc::CeilingPoint::c_s);

    py::class_<mc::CeilingReport>(m, "CeilingReport")
        .def_readonly("ceiling_p", &mc::CeilingReport::ceiling_p)
        .def_readonly("ceiling_s", &mc::CeilingReport::ceiling_s)
        .def_readonly("points", &mc::CeilingReport::points)
        .def_readonly("all_below", &mc::CeilingReport::all_below)
        .def_readonly("monotone", &mc::CeilingReport::monotone)
        .def_readonly("final_within_fraction",
                      &mc::CeilingReport::final_within_fraction)
        .def_readonly("min_margin_p", &mc::CeilingReport::min_margin_p)
        .def_readonly("min_margin_s", &mc::CeilingReport::min_margin_s);

    py::class_<mc::DominanceResult>(m, "DominanceResult")
        .def_readonly("strict", &mc::DominanceResult::strict)
        .def_readonly("equality_boundary", &mc::DominanceResult::equality_boundary)
        .def_readonly("n_samples", &mc::DominanceResult::n_samples)
        .def_readonly("min_gap_primary", &mc::DominanceResult::min_gap_primary)
        .def_readonly("gap_backscatter", &mc::DominanceResult::gap_backscatter);

    m.def(
        "sample_channel",
        [](const mc::Geometry& geometry, const mc::FadingModel& fading,
           std::uint64_t seed, std::uint64_t index) {
            rng::Stream stream(seed, rng::stream::channel, index);
            return mc::sample_channel(geometry, fading, stream);
        },
        py::arg("geometry"), py::arg("fading"), py::arg("seed"),
        py::arg("index") = 0);
    m.def(
        "estimate_primary_rate",
        [](const SystemParams& params, const ChannelState& ch,
           const mc::CsDistribution& cs, std::uint64_t n_samples,
           std::uint64_t seed, std::uint64_t chunk_size, unsigned workers) {
            mc::EstimatorOptions options;
            options.chunk_size = chunk_size;
            options.workers = workers;
            return mc::estimate_primary_rate(params, ch, cs, n_samples, seed,
                                             options);
        },
        py::arg("params"), py::arg("channel"), py::arg("cs"),
        py::arg("n_samples"), py::arg("seed"), py::arg("chunk_size") = 4096,
        py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
    m.def("expected_primary_rate", &mc::expected_primary_rate, py::arg("params"),
          py::arg("channel"), py::arg("cs"));
    m.def(
        "verify_theorem1",
        [](const SystemParams& params, const ChannelState& ch,
           const mc::CsDistribution& cs, std::uint64_t n_samples,
           std::uint64_t seed) {
            return mc::verify_theorem1(params, ch, cs, n_samples, seed);
        },
        py::arg("params"), py::arg("channel"), py::arg("cs"),
        py::arg("n_samples"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "verify_ceilings",
        [](const SystemParams& params, const ChannelState& ch,
           const std::vector<double>& p0_grid_mw, double fraction) {
            return mc::verify_ceilings(params, ch, p0_grid_mw, fraction);
        },
        py::arg("params"), py::arg("channel"), py::arg("p0_grid_mw"),
        py::arg("fraction") = 0.01);
    m.def("verify_ideal_dominance", &mc::verify_ideal_dominance,
          py::arg("params"), py::arg("channel"), py::arg("cs"),
          py::arg("n_samples"), py::arg("seed"), py::arg("index_offset") = 0,
          py::call_guard<py::gil_scoped_release>());

    // ---- waveform ----
    py::class_<wf::EmpiricalSinr>(m, "EmpiricalSinr")
        .def_readonly("value", &wf::EmpiricalSinr::value)
        .def_readonly("n_symbols", &wf::EmpiricalSinr::n_symbols)
        .def_readonly("target", &wf::EmpiricalSinr::target)
        .def_readonly("rel_dev", &wf::EmpiricalSinr::rel_dev)
        .def_readonly("low_sample_warning", &wf::EmpiricalSinr::low_sample_warning)
        .def("__repr__", [](const wf::EmpiricalSinr& s) {
            std::ostringstream out;
            out << "EmpiricalSinr(value=" << s.value << ", target=" << s.target
                << ", rel_dev=" << s.rel_dev << ")";
            return out.str();
        });

    py::class_<wf::NoiseVarianceReport>(m, "NoiseVarianceReport")
        .def_readonly("tau_p", &wf::NoiseVarianceReport::tau_p)
        .def_readonly("tau_r", &wf::NoiseVarianceReport::tau_r)
        .def_readonly("w", &wf::NoiseVarianceReport::w);

    py::class_<wf::SpreadingGainPoint>(m, "SpreadingGainPoint")
        .def_readonly("spreading_factor", &wf::SpreadingGainPoint::spreading_factor)
        .def_readonly("sinr", &wf::SpreadingGainPoint::sinr);

    py::class_<wf::SpreadingGainReport>(m, "SpreadingGainReport")
        .def_readonly("points", &wf::SpreadingGainReport::points)
        .def_readonly("loglog_slope", &wf::SpreadingGainReport::loglog_slope);

    m.def("run_primary_sinr_campaign", &wf::run_primary_sinr_campaign,
          py::arg("params"), py::arg("channel"), py::arg("cs_mag"),
          py::arg("n_blocks"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_despread_sinr_campaign", &wf::run_despread_sinr_campaign,
          py::arg("params"), py::arg("channel"), py::arg("n_blocks"),
          py::arg("seed"), py::call_guard<py::gil_scoped_release>());
    m.def("measure_noise_variances", &wf::measure_noise_variances,
          py::arg("params"), py::arg("channel"), py::arg("cs_mag"),
          py::arg("n_blocks"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "spreading_gain_check",
        [](const SystemParams& params, const ChannelState& ch,
           const std::vector<int>& l_values, std::uint64_t n_symbols_per_l,
           std::uint64_t seed) {
            return wf::spreading_gain_check(params, ch, l_values,
                                            n_symbols_per_l, seed);
        },
        py::arg("params"), py::arg("channel"), py::arg("l_values"),
        py::arg("n_symbols_per_l"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());

    // ---- campaigns ----
    m.def("default_config_text",
          [] { return cli::resolved_config_text(cli::default_config()); });
    m.def(
        "sweep_csv",
        [](const std::string& config_text, unsigned workers) {
            const cli::CampaignConfig config = config_from_text(config_text);
            std::ostringstream out;
            cli::write_sweep_csv(out, config,
                                 cli::compute_sweep(config, {workers}));
            return out.str();
        },
        py::arg("config_text") = "", py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "validate_report",
        [](const std::string& config_text) {
            const cli::CampaignConfig config = config_from_text(config_text);
            std::ostringstream out;
            const int code = cli::run_validate(config, out, {});
            return py::make_tuple(code, out.str());
        },
        py::arg("config_text") = "");
    m.def(
        "waveform_csv",
        [](const std::string& config_text) {
            const cli::CampaignConfig config = config_from_text(config_text);
            std::ostringstream out;
            cli::write_waveform_csv(out, config);
            return out.str();
        },
        py::arg("config_text") = "",
        py::call_guard<py::gil_scoped_release>());
}
