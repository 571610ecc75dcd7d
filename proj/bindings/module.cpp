#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nisac/channel.hpp"
#include "nisac/downlink.hpp"
#include "nisac/errors.hpp"
#include "nisac/experiment.hpp"
#include "nisac/numerics.hpp"
#include "nisac/region.hpp"
#include "nisac/rng.hpp"
#include "nisac/uplink.hpp"
#include "nisac/version.hpp"

namespace py = pybind11;
using namespace nisac;

namespace {

py::list rows_as_dicts(const RegionResult& result) {
    py::list rows;
    for (const RegionRow& row : result.rows) {
        py::dict d;
        d["design"] = row.design;
        d["sweep_param"] = row.sweep_param;
        d["sensing_value"] = row.sensing_value;
        d["comm_value"] = row.comm_value;
        d["aux"] = row.aux;
        d["pareto"] = row.pareto;
        d["status"] = row.status;
        rows.append(std::move(d));
    }
    return rows;
}

std::string metric_name(SensingMetricKind kind) {
    return kind == SensingMetricKind::kGainAtTarget ? "gain" : "mse";
}

SensingMetricKind metric_from_name(const std::string& name) {
    if (name == "gain") {
        return SensingMetricKind::kGainAtTarget;
    }
    if (name == "mse") {
        return SensingMetricKind::kBeampatternMse;
    }
    throw ValidationError("metric must be 'gain' or 'mse'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "NOMA-ISAC tradeoff region toolkit";
    m.attr("__version__") = kVersion;
    m.attr("rng_id") = kRngId;

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const IoError& e) {
            PyErr_SetString(PyExc_OSError, e.what());
        } catch (const ConfigError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const DimensionMismatch& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    py::class_<ArrayGeometry>(m, "ArrayGeometry")
        .def(py::init([](int num_antennas, double element_spacing) {
                 ArrayGeometry g{num_antennas, element_spacing};
                 g.validate();
                 return g;
             }),
             py::arg("num_antennas") = 1, py::arg("element_spacing") = 0.5)
        .def_readwrite("num_antennas", &ArrayGeometry::num_antennas)
        .def_readwrite("element_spacing", &ArrayGeometry::element_spacing);

    py::class_<LinkBudget>(m, "LinkBudget")
        .def(py::init([](double gamma_s, double gamma_c, double kappa, double rho_resid,
                         double total_power) {
                 LinkBudget b{gamma_s, gamma_c, kappa, rho_resid, total_power};
                 b.validate();
                 return b;
             }),
             py::arg("gamma_s") = 0.0, py::arg("gamma_c") = 0.0, py::arg("kappa") = 1.0,
             py::arg("rho_resid") = 1.0, py::arg("total_power") = 1.0)
        .def_readwrite("gamma_s", &LinkBudget::gamma_s)
        .def_readwrite("gamma_c", &LinkBudget::gamma_c)
        .def_readwrite("kappa", &LinkBudget::kappa)
        .def_readwrite("rho_resid", &LinkBudget::rho_resid)
        .def_readwrite("total_power", &LinkBudget::total_power);

    py::class_<ResourceSplit>(m, "ResourceSplit")
        .def(py::init([](double alpha_s, double alpha_c, double alpha_m) {
                 ResourceSplit s{alpha_s, alpha_c, alpha_m};
                 s.validate();
                 return s;
             }),
             py::arg("alpha_s"), py::arg("alpha_c"), py::arg("alpha_m"))
        .def_readonly("alpha_s", &ResourceSplit::alpha_s)
        .def_readonly("alpha_c", &ResourceSplit::alpha_c)
        .def_readonly("alpha_m", &ResourceSplit::alpha_m);

    py::class_<UplinkPoint>(m, "UplinkPoint")
        .def_readonly("sensing_rate", &UplinkPoint::sensing_rate)
        .def_readonly("comm_rate", &UplinkPoint::comm_rate)
        .def_readonly("split", &UplinkPoint::split);

    py::class_<ChannelSet>(m, "ChannelSet")
        .def(py::init([](std::vector<CVector> channels, double noise_power) {
                 ChannelSet c{std::move(channels), noise_power};
                 c.validate();
                 return c;
             }),
             py::arg("user_channels"), py::arg("noise_power") = 1.0)
        .def_readwrite("user_channels", &ChannelSet::user_channels)
        .def_readwrite("noise_power", &ChannelSet::noise_power)
        .def("num_users", &ChannelSet::num_users);

    py::class_<SensingMetricSpec>(m, "SensingMetricSpec")
        .def(py::init([](const std::string& metric, double target_angle,
                         double mainlobe_halfwidth, int angle_grid) {
                 SensingMetricSpec s;
                 s.kind = metric_from_name(metric);
                 s.target_angle = target_angle;
                 s.mainlobe_halfwidth = mainlobe_halfwidth;
                 s.angle_grid = angle_grid;
                 s.validate();
                 return s;
             }),
             py::arg("metric") = "gain", py::arg("target_angle") = 0.0,
             py::arg("mainlobe_halfwidth") = 5.0 * 3.14159265358979323846 / 180.0,
             py::arg("angle_grid") = 181)
        .def_property(
            "metric", [](const SensingMetricSpec& s) { return metric_name(s.kind); },
            [](SensingMetricSpec& s, const std::string& name) { s.kind = metric_from_name(name); })
        .def_readwrite("target_angle", &SensingMetricSpec::target_angle)
        .def_readwrite("mainlobe_halfwidth", &SensingMetricSpec::mainlobe_halfwidth)
        .def_readwrite("angle_grid", &SensingMetricSpec::angle_grid);

    py::class_<OptimizerSettings>(m, "OptimizerSettings")
        .def(py::init<>())
        .def_readwrite("max_iters", &OptimizerSettings::max_iters)
        .def_readwrite("step_init", &OptimizerSettings::step_init)
        .def_readwrite("step_shrink", &OptimizerSettings::step_shrink)
        .def_readwrite("tol", &OptimizerSettings::tol)
        .def_readwrite("restarts", &OptimizerSettings::restarts)
        .def_readwrite("finite_diff_eps", &OptimizerSettings::finite_diff_eps)
        .def_readwrite("polish_hops", &OptimizerSettings::polish_hops);

    py::class_<BeamformerSet>(m, "BeamformerSet")
        .def(py::init([](std::vector<CVector> user_precoders,
                         std::optional<CVector> sensing_precoder) {
                 BeamformerSet b;
                 b.user_precoders = std::move(user_precoders);
                 b.sensing_precoder = std::move(sensing_precoder);
                 return b;
             }),
             py::arg("user_precoders"), py::arg("sensing_precoder") = std::nullopt)
        .def_readwrite("user_precoders", &BeamformerSet::user_precoders)
        .def_readwrite("sensing_precoder", &BeamformerSet::sensing_precoder)
        .def("total_power", &BeamformerSet::total_power);

    py::class_<DownlinkPoint>(m, "DownlinkPoint")
        .def_readonly("sensing_value", &DownlinkPoint::sensing_value)
        .def_readonly("comm_value", &DownlinkPoint::comm_value)
        .def_readonly("per_user_rates", &DownlinkPoint::per_user_rates)
        .def_readonly("multicast_rate", &DownlinkPoint::multicast_rate)
        .def_readonly("beamformers", &DownlinkPoint::beamformers);

    py::class_<RegionResult>(m, "RegionResult")
        .def_property_readonly("rows", &rows_as_dicts)
        .def_property_readonly("metadata_json",
                               [](const RegionResult& r) { return r.metadata.dump(); })
        .def("to_csv", [](const RegionResult& r) { return render_csv(r); });

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("trials", &ExperimentConfig::trials)
        .def_property_readonly("echo_json",
                               [](const ExperimentConfig& c) { return config_echo(c).dump(); });

    m.def("exp_integral_e1", &exp_integral_e1, py::arg("x"));
    m.def(
        "steering_vector",
        [](const ArrayGeometry& g, double theta) { return steering_vector(g, theta); },
        py::arg("geometry"), py::arg("theta"));
    m.def(
        "draw_rayleigh_channels",
        [](const ArrayGeometry& g, int num_users, double rho, std::uint64_t seed,
           std::uint64_t stream, double noise_power) {
            return draw_rayleigh_channels(g, num_users, CorrelationSpec{rho},
                                          RngSeed{seed, stream}, noise_power);
        },
        py::arg("geometry"), py::arg("num_users"), py::arg("rho"), py::arg("seed"),
        py::arg("stream") = 0, py::arg("noise_power") = 1.0);

    m.def("reir", &reir, py::arg("alpha"), py::arg("budget"));
    m.def("comm_rate_mixed", &comm_rate_mixed, py::arg("alpha_m"), py::arg("budget"));
    m.def(
        "uplink_point",
        [](const std::string& design, const ResourceSplit& split, const LinkBudget& budget) {
            return uplink_point(uplink_design_from_string(design), split, budget);
        },
        py::arg("design"), py::arg("split"), py::arg("budget"));
    m.def(
        "design_split",
        [](const std::string& design, double beta) {
            return design_split(uplink_design_from_string(design), beta);
        },
        py::arg("design"), py::arg("beta"));
    m.def(
        "frontier",
        [](const std::string& design, const LinkBudget& budget, int num_points) {
            return frontier(uplink_design_from_string(design), budget, num_points);
        },
        py::arg("design"), py::arg("budget"), py::arg("num_points"));
    m.def(
        "ergodic_frontier",
        [](const std::string& design, double mean_gamma_c, const LinkBudget& budget,
           std::uint64_t trials, std::uint64_t seed, std::uint64_t stream, int num_points) {
            return ergodic_frontier(uplink_design_from_string(design), mean_gamma_c, budget,
                                    trials, RngSeed{seed, stream}, num_points);
        },
        py::arg("design"), py::arg("mean_gamma_c"), py::arg("budget"), py::arg("trials"),
        py::arg("seed"), py::arg("stream") = 0, py::arg("num_points") = 25);

    m.def("transmit_covariance", &transmit_covariance, py::arg("beamformers"));
    m.def(
        "sensing_metric",
        [](const CMatrix& covariance, const SensingMetricSpec& spec, const ArrayGeometry& g) {
            return sensing_metric(covariance, spec, g);
        },
        py::arg("covariance"), py::arg("spec"), py::arg("geometry"));
    m.def("rates_sdma", &rates_sdma, py::arg("channels"), py::arg("beamformers"));
    m.def("default_decoding_order", &default_decoding_order, py::arg("channels"));
    m.def("rates_noma_empowered", &rates_noma_empowered, py::arg("channels"),
          py::arg("beamformers"), py::arg("order"));
    m.def(
        "rates_noma_inspired",
        [](const ChannelSet& channels, const BeamformerSet& b, const std::string& mode) {
            const InspiredRates r =
                rates_noma_inspired(channels, b, downlink_design_from_string(mode));
            return py::make_tuple(r.per_user, r.multicast);
        },
        py::arg("channels"), py::arg("beamformers"), py::arg("mode"));
    m.def(
        "tradeoff_point",
        [](const std::string& design, const ChannelSet& channels, const ArrayGeometry& g,
           const SensingMetricSpec& spec, double power, double constraint,
           const OptimizerSettings& settings, std::uint64_t seed, std::uint64_t stream) {
            return tradeoff_point(downlink_design_from_string(design), channels, g, spec, power,
                                  constraint, settings, RngSeed{seed, stream});
        },
        py::arg("design"), py::arg("channels"), py::arg("geometry"), py::arg("spec"),
        py::arg("power"), py::arg("constraint"), py::arg("settings") = OptimizerSettings{},
        py::arg("seed") = 0, py::arg("stream") = 0);
    m.def(
        "region_sweep_downlink",
        [](const std::string& design, const ChannelSet& channels, const ArrayGeometry& g,
           const SensingMetricSpec& spec, double power, const std::vector<double>& levels,
           const OptimizerSettings& settings, std::uint64_t seed, std::uint64_t stream) {
            return region_sweep_downlink(downlink_design_from_string(design), channels, g, spec,
                                         power, levels, settings, RngSeed{seed, stream});
        },
        py::arg("design"), py::arg("channels"), py::arg("geometry"), py::arg("spec"),
        py::arg("power"), py::arg("levels"), py::arg("settings") = OptimizerSettings{},
        py::arg("seed") = 0, py::arg("stream") = 0);

    m.def("load_config", &load_config, py::arg("path"));
    m.def(
        "parse_config",
        [](const std::string& text) {
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(text);
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(e.what());
            }
            return parse_config(doc);
        },
        py::arg("text"));
    m.def("run_experiment", &run_experiment, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("emit", &emit, py::arg("result"), py::arg("out_dir"), py::arg("formats"));
    m.def("load_region_json", &load_region_json, py::arg("path"));
}
