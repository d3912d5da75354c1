#pragma once

// Problem-definition files for the command-line front end.
//
// {
//   "g": "log(1/(1-z))",            expression in z (see expression_parser.hpp)
//   "phi": "identity" | "z/2",      optional, default identity
//   "alpha": 0.5,                   classical route: H_{v_alpha} -> H^inf
//   "source": {"space": "hardy", "p": 2},
//   "target": {"space": "bv", "weight": {"standard": 0.5}},
//   "weight": {"table": [[0, 1], [0.5, 0.75], [0.9, 0.19]]},
//   "w": {"standard": 1},           second weight of the vanishing condition
//   "transfer": "B" | "H",          little-space transfer flavor
//   "route": "classical" | "general",
//   "grid": {"J": 30, "angles": 512},
//   "tol": 1e-6, "seed": 1, "n_trials": 200
// }
//
// Spaces: hinf, hv, hv0, bv, bv0 (with "weight"), hardy (with "p"),
// bergman (with "p" and "alpha").

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "volterra/estimators.hpp"

namespace volterra {

struct ProblemDefinition {
    nlohmann::ordered_json source_document;

    std::string g_text;
    AnalyticFunction g;
    std::string phi_text = "identity";
    AnalyticFunction phi_map = AnalyticFunction::identity();
    bool phi_identity = true;

    std::optional<double> alpha;
    std::optional<SpaceSpec> source;
    std::optional<SpaceSpec> target;
    std::optional<Weight> weight;
    std::optional<Weight> second_weight;
    std::optional<TargetFamily> transfer;
    std::string route;  // "classical" or "general"

    GridSpec grid{};
    double tol = 1e-6;
    std::uint64_t seed = 1;
    std::size_t n_trials = 200;

    /// The self-map sampled on the problem grid.
    DiscSelfMap self_map() const;
    bool classical() const { return route == "classical"; }
};

/// Parses and validates a problem document. Throws ParseError with the
/// 1-based line/column of the offending text.
ProblemDefinition parse_problem(std::string_view text);

}  // namespace volterra
