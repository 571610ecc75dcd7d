#pragma once

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "nisac/channel.hpp"
#include "nisac/downlink.hpp"
#include "nisac/numerics.hpp"
#include "nisac/region.hpp"
#include "nisac/uplink.hpp"

namespace nisac {

enum class ExperimentKind { kUplinkRegion, kUplinkErgodicRegion, kDownlinkRegion };

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

// Parsed-and-defaulted experiment description. Field defaults mirror the
// domain type defaults; anything not listed in a config file stays at these
// values and is echoed as such in the output metadata.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::kUplinkRegion;
    std::vector<std::string> designs;
    std::uint64_t seed = 0;
    std::uint64_t trials = 10000;

    ArrayGeometry geometry;
    int num_users = 2;
    double rho = 0.0;
    double sigma2 = 1.0;
    LinkBudget budget;
    double mean_gamma_c = 0.0;  // ergodic runs; defaults to budget.gamma_c

    int num_points = 25;
    double constraint_lo = 0.0;
    double constraint_hi = 0.0;  // defaults to total_power * num_antennas
    SensingMetricSpec sensing;

    OptimizerSettings optimizer;

    // Optional pinned resource split: uplink kinds evaluate each design at
    // exactly this split instead of sweeping beta.
    std::optional<ResourceSplit> split;
};

// Strict parse: unknown keys anywhere are a hard error. Scalar channel and
// sweep fields may appear flat at the top level or inside their blocks, but
// not both.
ExperimentConfig parse_config(const nlohmann::json& document);
ExperimentConfig load_config(const std::filesystem::path& path);

// Re-checks the cross-field invariants; called by load_config and again by
// the CLI after flag overrides.
void validate_config(const ExperimentConfig& config);

// The parsed-and-defaulted config as a JSON document (the metadata echo).
nlohmann::json config_echo(const ExperimentConfig& config);

RegionResult run_experiment(const ExperimentConfig& config);

// Real with 9 significant digits, printf %g style.
std::string format_real(double value);

// Fixed columns, then the union of aux keys sorted by name; rows sorted by
// (design, sweep_param); trailing newline.
std::string render_csv(const RegionResult& result);

void emit(const RegionResult& result, const std::filesystem::path& out_dir,
          const std::vector<std::string>& formats);

RegionResult load_region_json(const std::filesystem::path& path);

// 0 if every row is ok, 2 otherwise.
int exit_code_for(const RegionResult& result);

}  // namespace nisac
