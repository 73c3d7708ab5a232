#ifndef MRF_REPORT_HPP
#define MRF_REPORT_HPP

#include <json.hpp>
#include <optional>
#include <string>

#include "mrf/instance.hpp"

namespace mrf {

inline constexpr const char* kToolName = "mrflump";
inline constexpr const char* kToolVersion = "0.1.0";

struct AnalysisOptions {
    double tol = kDefaultTol;
    bool want_minimal_graphs = true;  // skipped automatically above 6 vertices
    std::optional<Graph> graph_override;
    std::optional<std::uint64_t> seed;  // recorded for generated instances
};

// Deterministic machine report: fixed key order, reals as strings with 12
// significant digits, no wall-clock fields.
nlohmann::ordered_json analysis_report(const Instance& instance, const AnalysisOptions& opts);

std::string render_human(const nlohmann::ordered_json& report);

}  // namespace mrf

#endif
