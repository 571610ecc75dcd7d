#include "nisac/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "nisac/errors.hpp"
#include "nisac/version.hpp"

namespace nisac {

namespace {

using nlohmann::json;

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

const std::initializer_list<const char*> kChannelKeys = {
    "num_antennas", "element_spacing", "num_users", "rho",         "sigma2",       "gamma_c",
    "gamma_s",      "kappa",           "rho_resid", "total_power", "mean_gamma_c",
};
const std::initializer_list<const char*> kSweepKeys = {
    "num_points",       "constraint_lo",          "constraint_hi", "metric",
    "target_angle_deg", "mainlobe_halfwidth_deg", "angle_grid",
};
const std::initializer_list<const char*> kOptimizerKeys = {
    "max_iters", "step_init", "step_shrink", "tol", "restarts", "finite_diff_eps", "polish_hops",
};
const std::initializer_list<const char*> kSplitKeys = {"alpha_s", "alpha_c", "alpha_m"};
const std::initializer_list<const char*> kTopKeys = {
    "experiment_kind", "designs", "seed", "trials", "channel", "sweep", "optimizer", "split",
};

bool in_list(const std::string& key, std::initializer_list<const char*> list) {
    for (const char* k : list) {
        if (key == k) {
            return true;
        }
    }
    return false;
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        if (!in_list(item.key(), allowed)) {
            throw UnknownKey("unknown key '" +
                             (where.empty() ? item.key() : where + "." + item.key()) + "'");
        }
    }
}

double as_real(const json& value, const std::string& key) {
    if (!value.is_number()) {
        throw ValidationError("field '" + key + "' must be a number");
    }
    return value.get<double>();
}

std::int64_t as_int(const json& value, const std::string& key) {
    if (!value.is_number_integer()) {
        throw ValidationError("field '" + key + "' must be an integer");
    }
    return value.get<std::int64_t>();
}

std::uint64_t as_u64(const json& value, const std::string& key) {
    if (value.is_number_unsigned()) {
        return value.get<std::uint64_t>();
    }
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(value.get<std::int64_t>());
    }
    throw ValidationError("field '" + key + "' must be a non-negative integer");
}

std::string as_string(const json& value, const std::string& key) {
    if (!value.is_string()) {
        throw ValidationError("field '" + key + "' must be a string");
    }
    return value.get<std::string>();
}

// Block keys may also appear flat at the top level; both at once is ambiguous.
json merge_block(const json& document, const char* block_name,
                 std::initializer_list<const char*> keys) {
    json merged = json::object();
    if (document.contains(block_name)) {
        if (!document.at(block_name).is_object()) {
            throw ValidationError(std::string("field '") + block_name + "' must be an object");
        }
        merged = document.at(block_name);
        reject_unknown_keys(merged, block_name, keys);
    }
    for (const char* key : keys) {
        if (!document.contains(key)) {
            continue;
        }
        if (merged.contains(key)) {
            throw ValidationError("field '" + std::string(key) +
                                  "' given both flat and inside '" + block_name + "'");
        }
        merged[key] = document.at(key);
    }
    return merged;
}

double take_real(const json& obj, const char* key, double fallback) {
    return obj.contains(key) ? as_real(obj.at(key), key) : fallback;
}

std::int64_t take_int(const json& obj, const char* key, std::int64_t fallback) {
    return obj.contains(key) ? as_int(obj.at(key), key) : fallback;
}

void require_positive(double value, const char* field) {
    if (!(value > 0.0)) {
        throw ValidationError(std::string("field '") + field + "' must be > 0");
    }
}

double pinned_beta(UplinkDesignKind design, const ResourceSplit& split) {
    switch (design) {
        case UplinkDesignKind::kOma:
            return split.alpha_s;
        case UplinkDesignKind::kSemiNoma:
            return split.alpha_m;
        case UplinkDesignKind::kPureNoma:
            return 1.0;
    }
    return 0.0;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    }
    return grid;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::kUplinkRegion:
            return "uplink_region";
        case ExperimentKind::kUplinkErgodicRegion:
            return "uplink_ergodic_region";
        case ExperimentKind::kDownlinkRegion:
            return "downlink_region";
    }
    return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    if (name == "uplink_region") {
        return ExperimentKind::kUplinkRegion;
    }
    if (name == "uplink_ergodic_region") {
        return ExperimentKind::kUplinkErgodicRegion;
    }
    if (name == "downlink_region") {
        return ExperimentKind::kDownlinkRegion;
    }
    throw ValidationError("unknown experiment_kind '" + name + "'");
}

ExperimentConfig parse_config(const json& document) {
    if (!document.is_object()) {
        throw ValidationError("config root must be an object");
    }
    {
        // Flat spellings of block scalars are allowed at the top level.
        std::set<std::string> allowed;
        for (const char* k : kTopKeys) allowed.insert(k);
        for (const char* k : kChannelKeys) allowed.insert(k);
        for (const char* k : kSweepKeys) allowed.insert(k);
        for (const char* k : kSplitKeys) allowed.insert(k);
        for (const auto& item : document.items()) {
            if (!allowed.count(item.key())) {
                throw UnknownKey("unknown key '" + item.key() + "'");
            }
        }
    }

    ExperimentConfig config;
    if (!document.contains("experiment_kind")) {
        throw ValidationError("field 'experiment_kind' is required");
    }
    config.kind = experiment_kind_from_string(
        as_string(document.at("experiment_kind"), "experiment_kind"));

    if (!document.contains("designs") || !document.at("designs").is_array() ||
        document.at("designs").empty()) {
        throw ValidationError("field 'designs' must be a non-empty array");
    }
    for (const auto& entry : document.at("designs")) {
        config.designs.push_back(as_string(entry, "designs"));
    }

    if (!document.contains("seed")) {
        throw ValidationError("field 'seed' is required");
    }
    config.seed = as_u64(document.at("seed"), "seed");
    if (document.contains("trials")) {
        config.trials = as_u64(document.at("trials"), "trials");
    }

    const json channel = merge_block(document, "channel", kChannelKeys);
    config.geometry.num_antennas =
        static_cast<int>(take_int(channel, "num_antennas", config.geometry.num_antennas));
    config.geometry.element_spacing =
        take_real(channel, "element_spacing", config.geometry.element_spacing);
    config.num_users = static_cast<int>(take_int(channel, "num_users", config.num_users));
    config.rho = take_real(channel, "rho", config.rho);
    config.sigma2 = take_real(channel, "sigma2", config.sigma2);
    config.budget.gamma_c = take_real(channel, "gamma_c", config.budget.gamma_c);
    config.budget.gamma_s = take_real(channel, "gamma_s", config.budget.gamma_s);
    config.budget.kappa = take_real(channel, "kappa", config.budget.kappa);
    config.budget.rho_resid = take_real(channel, "rho_resid", config.budget.rho_resid);
    config.budget.total_power = take_real(channel, "total_power", config.budget.total_power);
    config.mean_gamma_c = take_real(channel, "mean_gamma_c", config.budget.gamma_c);

    const json sweep = merge_block(document, "sweep", kSweepKeys);
    config.num_points = static_cast<int>(take_int(sweep, "num_points", config.num_points));
    config.constraint_lo = take_real(sweep, "constraint_lo", 0.0);
    config.constraint_hi =
        take_real(sweep, "constraint_hi",
                  config.budget.total_power * config.geometry.num_antennas);
    if (sweep.contains("metric")) {
        const std::string metric = as_string(sweep.at("metric"), "metric");
        if (metric == "gain") {
            config.sensing.kind = SensingMetricKind::kGainAtTarget;
        } else if (metric == "mse") {
            config.sensing.kind = SensingMetricKind::kBeampatternMse;
        } else {
            throw ValidationError("field 'metric' must be 'gain' or 'mse'");
        }
    }
    config.sensing.target_angle =
        take_real(sweep, "target_angle_deg", config.sensing.target_angle / kDegToRad) * kDegToRad;
    config.sensing.mainlobe_halfwidth =
        take_real(sweep, "mainlobe_halfwidth_deg", config.sensing.mainlobe_halfwidth / kDegToRad) *
        kDegToRad;
    config.sensing.angle_grid =
        static_cast<int>(take_int(sweep, "angle_grid", config.sensing.angle_grid));

    if (document.contains("optimizer")) {
        const json& opt = document.at("optimizer");
        if (!opt.is_object()) {
            throw ValidationError("field 'optimizer' must be an object");
        }
        reject_unknown_keys(opt, "optimizer", kOptimizerKeys);
        config.optimizer.max_iters =
            static_cast<int>(take_int(opt, "max_iters", config.optimizer.max_iters));
        config.optimizer.step_init = take_real(opt, "step_init", config.optimizer.step_init);
        config.optimizer.step_shrink = take_real(opt, "step_shrink", config.optimizer.step_shrink);
        config.optimizer.tol = take_real(opt, "tol", config.optimizer.tol);
        config.optimizer.restarts =
            static_cast<int>(take_int(opt, "restarts", config.optimizer.restarts));
        config.optimizer.finite_diff_eps =
            take_real(opt, "finite_diff_eps", config.optimizer.finite_diff_eps);
        config.optimizer.polish_hops =
            static_cast<int>(take_int(opt, "polish_hops", config.optimizer.polish_hops));
    }

    const json split = merge_block(document, "split", kSplitKeys);
    if (!split.empty()) {
        ResourceSplit s;
        s.alpha_s = take_real(split, "alpha_s", 0.0);
        s.alpha_c = take_real(split, "alpha_c", 0.0);
        s.alpha_m = take_real(split, "alpha_m", 0.0);
        config.split = s;
    }

    validate_config(config);
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    json document;
    try {
        document = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    return parse_config(document);
}

void validate_config(const ExperimentConfig& config) {
    for (const std::string& name : config.designs) {
        try {
            if (config.kind == ExperimentKind::kDownlinkRegion) {
                downlink_design_from_string(name);
            } else {
                uplink_design_from_string(name);
            }
        } catch (const ValidationError&) {
            throw ValidationError("design '" + name + "' is not valid for experiment_kind '" +
                                  std::string(to_string(config.kind)) + "'");
        }
    }
    config.geometry.validate();
    CorrelationSpec{config.rho}.validate();
    config.budget.validate();
    config.sensing.validate();
    require_positive(config.sigma2, "sigma2");
    if (config.num_users < 1) {
        throw ValidationError("field 'num_users' must be >= 1");
    }
    if (config.mean_gamma_c < 0.0) {
        throw ValidationError("field 'mean_gamma_c' must be >= 0");
    }
    if (config.trials < 1) {
        throw ValidationError("field 'trials' must be >= 1");
    }
    if (config.kind == ExperimentKind::kUplinkErgodicRegion && config.trials < 100) {
        throw ValidationError("field 'trials' must be >= 100 for ergodic runs");
    }
    if (config.num_points < 2) {
        throw ValidationError("field 'num_points' must be >= 2");
    }
    if (config.kind == ExperimentKind::kDownlinkRegion &&
        !(config.constraint_lo <= config.constraint_hi)) {
        throw ValidationError("'constraint_lo' must not exceed 'constraint_hi'");
    }
    if (config.optimizer.max_iters < 1) {
        throw ValidationError("field 'max_iters' must be >= 1");
    }
    require_positive(config.optimizer.step_init, "step_init");
    if (!(config.optimizer.step_shrink > 0.0 && config.optimizer.step_shrink < 1.0)) {
        throw ValidationError("field 'step_shrink' must lie in (0, 1)");
    }
    require_positive(config.optimizer.tol, "tol");
    if (config.optimizer.restarts < 1) {
        throw ValidationError("field 'restarts' must be >= 1");
    }
    require_positive(config.optimizer.finite_diff_eps, "finite_diff_eps");
    if (config.optimizer.polish_hops < 0) {
        throw ValidationError("field 'polish_hops' must be >= 0");
    }
    if (config.split) {
        if (config.kind != ExperimentKind::kUplinkRegion) {
            throw ValidationError("'split' pins a fixed split and applies to uplink_region only");
        }
        config.split->validate();
    }
}

nlohmann::json config_echo(const ExperimentConfig& config) {
    json doc;
    doc["experiment_kind"] = to_string(config.kind);
    doc["designs"] = config.designs;
    doc["seed"] = config.seed;
    doc["trials"] = config.trials;
    doc["channel"] = {
        {"num_antennas", config.geometry.num_antennas},
        {"element_spacing", config.geometry.element_spacing},
        {"num_users", config.num_users},
        {"rho", config.rho},
        {"sigma2", config.sigma2},
        {"gamma_c", config.budget.gamma_c},
        {"gamma_s", config.budget.gamma_s},
        {"kappa", config.budget.kappa},
        {"rho_resid", config.budget.rho_resid},
        {"total_power", config.budget.total_power},
        {"mean_gamma_c", config.mean_gamma_c},
    };
    doc["sweep"] = {
        {"num_points", config.num_points},
        {"constraint_lo", config.constraint_lo},
        {"constraint_hi", config.constraint_hi},
        {"metric", config.sensing.kind == SensingMetricKind::kGainAtTarget ? "gain" : "mse"},
        {"target_angle_deg", config.sensing.target_angle / kDegToRad},
        {"mainlobe_halfwidth_deg", config.sensing.mainlobe_halfwidth / kDegToRad},
        {"angle_grid", config.sensing.angle_grid},
    };
    doc["optimizer"] = {
        {"max_iters", config.optimizer.max_iters},
        {"step_init", config.optimizer.step_init},
        {"step_shrink", config.optimizer.step_shrink},
        {"tol", config.optimizer.tol},
        {"restarts", config.optimizer.restarts},
        {"finite_diff_eps", config.optimizer.finite_diff_eps},
        {"polish_hops", config.optimizer.polish_hops},
    };
    if (config.split) {
        doc["split"] = {
            {"alpha_s", config.split->alpha_s},
            {"alpha_c", config.split->alpha_c},
            {"alpha_m", config.split->alpha_m},
        };
    }
    return doc;
}

RegionResult run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();
    RegionResult merged;

    if (config.kind == ExperimentKind::kDownlinkRegion) {
        const ChannelSet channels =
            draw_rayleigh_channels(config.geometry, config.num_users, CorrelationSpec{config.rho},
                                   {config.seed, 0}, config.sigma2);
        const std::vector<double> levels =
            linspace(config.constraint_lo, config.constraint_hi, config.num_points);
        for (const std::string& name : config.designs) {
            const DownlinkDesignKind design = downlink_design_from_string(name);
            RegionResult part = region_sweep_downlink(
                design, channels, config.geometry, config.sensing, config.budget.total_power,
                levels, config.optimizer, {config.seed, 10 + static_cast<std::uint64_t>(design)});
            merged.rows.insert(merged.rows.end(), part.rows.begin(), part.rows.end());
        }
    } else {
        for (const std::string& name : config.designs) {
            const UplinkDesignKind design = uplink_design_from_string(name);
            if (config.split) {
                RegionRow row;
                row.design = name;
                try {
                    const UplinkPoint point = uplink_point(design, *config.split, config.budget);
                    row.sweep_param = pinned_beta(design, *config.split);
                    row.sensing_value = point.sensing_rate;
                    row.comm_value = point.comm_rate;
                    row.aux["alpha_s"] = point.split.alpha_s;
                    row.aux["alpha_c"] = point.split.alpha_c;
                    row.aux["alpha_m"] = point.split.alpha_m;
                } catch (const SplitDesignMismatch&) {
                    row.status = "infeasible";
                    row.pareto = false;
                }
                merged.rows.push_back(std::move(row));
            } else if (config.kind == ExperimentKind::kUplinkRegion) {
                RegionResult part = frontier(design, config.budget, config.num_points);
                merged.rows.insert(merged.rows.end(), part.rows.begin(), part.rows.end());
            } else {
                RegionResult part =
                    ergodic_frontier(design, config.mean_gamma_c, config.budget, config.trials,
                                     {config.seed, 0}, config.num_points);
                merged.rows.insert(merged.rows.end(), part.rows.begin(), part.rows.end());
            }
        }
    }

    sort_rows(merged.rows);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    merged.metadata = {
        {"config", config_echo(config)},
        {"version", kVersion},
        {"rng", kRngId},
        {"wall_time_s", elapsed.count()},
    };
    return merged;
}

std::string format_real(double value) {
    char buffer[64];
    const auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 9);
    if (ec != std::errc{}) {
        throw Error("format_real: conversion failed");
    }
    return std::string(buffer, ptr);
}

std::string render_csv(const RegionResult& result) {
    std::vector<RegionRow> rows = result.rows;
    sort_rows(rows);
    std::set<std::string> aux_keys;
    for (const RegionRow& row : rows) {
        for (const auto& [key, value] : row.aux) {
            aux_keys.insert(key);
        }
    }
    std::ostringstream out;
    out << "design,sweep_param,sensing_value,comm_value,pareto,status";
    for (const std::string& key : aux_keys) {
        out << ',' << key;
    }
    out << '\n';
    for (const RegionRow& row : rows) {
        out << row.design << ',' << format_real(row.sweep_param) << ','
            << format_real(row.sensing_value) << ',' << format_real(row.comm_value) << ','
            << (row.pareto ? "true" : "false") << ',' << row.status;
        for (const std::string& key : aux_keys) {
            out << ',';
            const auto it = row.aux.find(key);
            if (it != row.aux.end()) {
                out << format_real(it->second);
            }
        }
        out << '\n';
    }
    return out.str();
}

namespace {

json rows_to_json(const std::vector<RegionRow>& rows) {
    json array = json::array();
    for (const RegionRow& row : rows) {
        array.push_back({
            {"design", row.design},
            {"sweep_param", row.sweep_param},
            {"sensing_value", row.sensing_value},
            {"comm_value", row.comm_value},
            {"aux", json(row.aux)},
            {"pareto", row.pareto},
            {"status", row.status},
        });
    }
    return array;
}

}  // namespace

void emit(const RegionResult& result, const std::filesystem::path& out_dir,
          const std::vector<std::string>& formats) {
    for (const std::string& format : formats) {
        if (format != "csv" && format != "json") {
            throw ValidationError("unknown output format '" + format + "'");
        }
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec && !std::filesystem::is_directory(out_dir)) {
        throw IoError("cannot create output directory " + out_dir.string());
    }
    for (const std::string& format : formats) {
        const std::filesystem::path path = out_dir / ("region." + format);
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw IoError("cannot open " + path.string() + " for writing");
        }
        if (format == "csv") {
            out << render_csv(result);
        } else {
            std::vector<RegionRow> rows = result.rows;
            sort_rows(rows);
            const json doc = {{"metadata", result.metadata}, {"rows", rows_to_json(rows)}};
            out << doc.dump(2) << '\n';
        }
        out.flush();
        if (!out) {
            throw IoError("write to " + path.string() + " failed");
        }
    }
}

RegionResult load_region_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object() || !doc.contains("rows") || !doc.at("rows").is_array()) {
        throw ValidationError("region document lacks a 'rows' array");
    }
    RegionResult result;
    if (doc.contains("metadata")) {
        result.metadata = doc.at("metadata");
    }
    for (const json& entry : doc.at("rows")) {
        RegionRow row;
        row.design = entry.at("design").get<std::string>();
        row.sweep_param = entry.at("sweep_param").get<double>();
        row.sensing_value = entry.at("sensing_value").get<double>();
        row.comm_value = entry.at("comm_value").get<double>();
        row.pareto = entry.at("pareto").get<bool>();
        row.status = entry.at("status").get<std::string>();
        if (entry.contains("aux")) {
            for (const auto& item : entry.at("aux").items()) {
                row.aux[item.key()] = item.value().get<double>();
            }
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

int exit_code_for(const RegionResult& result) {
    for (const RegionRow& row : result.rows) {
        if (row.status != "ok") {
            return 2;
        }
    }
    return 0;
}

}  // namespace nisac
