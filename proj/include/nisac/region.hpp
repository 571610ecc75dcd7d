#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

namespace nisac {

// One swept (sensing, communication) operating point.
struct RegionRow {
    std::string design;
    double sweep_param = 0.0;
    double sensing_value = 0.0;
    double comm_value = 0.0;
    std::map<std::string, double> aux;
    bool pareto = true;
    std::string status = "ok";  // ok | infeasible | solver_failed
};

struct RegionResult {
    std::vector<RegionRow> rows;
    nlohmann::json metadata = nlohmann::json::object();
};

// Flags rows dominated by another row of the same design. Failed rows never
// count as efficient and never dominate. sensing_maximized=false treats the
// sensing axis as minimized (beampattern MSE).
void flag_pareto(std::vector<RegionRow>& rows, bool sensing_maximized = true);

// Stable sort by (design, sweep_param).
void sort_rows(std::vector<RegionRow>& rows);

}  // namespace nisac
