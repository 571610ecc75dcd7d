#include "nisac/region.hpp"

#include <algorithm>

namespace nisac {

void flag_pareto(std::vector<RegionRow>& rows, bool sensing_maximized) {
    auto sensing_of = [&](const RegionRow& r) {
        return sensing_maximized ? r.sensing_value : -r.sensing_value;
    };
    for (RegionRow& row : rows) {
        if (row.status != "ok") {
            row.pareto = false;
            continue;
        }
        bool dominated = false;
        for (const RegionRow& other : rows) {
            if (&other == &row || other.status != "ok" || other.design != row.design) {
                continue;
            }
            const bool no_worse = sensing_of(other) >= sensing_of(row) &&
                                  other.comm_value >= row.comm_value;
            const bool strictly_better = sensing_of(other) > sensing_of(row) ||
                                         other.comm_value > row.comm_value;
            if (no_worse && strictly_better) {
                dominated = true;
                break;
            }
        }
        row.pareto = !dominated;
    }
}

void sort_rows(std::vector<RegionRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const RegionRow& a, const RegionRow& b) {
        if (a.design != b.design) {
            return a.design < b.design;
        }
        return a.sweep_param < b.sweep_param;
    });
}

}  // namespace nisac
