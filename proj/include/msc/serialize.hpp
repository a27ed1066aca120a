#pragma once

#include "msc/core.hpp"
#include "msc/dynmsc.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace msc {

using ordered_json = nlohmann::ordered_json;

/// {"algorithm","k","ams","asw"?,"medoids","labels","swaps","iterations","seconds"?}
/// in that order. "seconds" is omitted when not given.
[[nodiscard]] inline ordered_json result_to_json(const std::string& algorithm, const ClusteringResult& r,
                                                 std::optional<double> seconds = std::nullopt) {
    ordered_json j;
    j["algorithm"] = algorithm;
    j["k"] = r.medoids.size();
    j["ams"] = r.ams;
    if (r.asw) j["asw"] = *r.asw;
    j["medoids"] = r.medoids;
    j["labels"] = r.labels;
    j["swaps"] = r.swaps;
    j["iterations"] = r.iterations;
    if (seconds) j["seconds"] = *seconds;
    return j;
}

/// {"best_k": ..., "per_k": [{"k":..., "ams":..., "medoids":[...]}]}
[[nodiscard]] inline ordered_json sweep_to_json(const SweepResult& s) {
    ordered_json j;
    j["best_k"] = s.best_k;
    j["per_k"] = ordered_json::array();
    for (const auto& e : s.per_k) {
        ordered_json row;
        row["k"] = e.k;
        row["ams"] = e.ams;
        row["medoids"] = e.medoids;
        j["per_k"].push_back(std::move(row));
    }
    return j;
}

}  // namespace msc
