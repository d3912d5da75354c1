#pragma once

// Command dispatch for the command-line front end. Each command turns a
// problem definition into a report document with the sections
// command, problem, criterion, estimate, oracle, verdict, caveats.

#include <optional>
#include <string>

#include <json.hpp>

#include "volterra/problem.hpp"

namespace volterra {

enum ExitCode : int { kExitVerdict = 0, kExitError = 1, kExitUndecided = 2, kExitPrecondition = 3 };

struct CommandOptions {
    std::optional<int> grid_depth;
    std::optional<int> angles;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n_trials;
    bool refine = false;  // doubles the angular resolution
};

struct CommandResult {
    nlohmann::ordered_json report;
    int exit_code = kExitVerdict;
    std::string csv;  // grid export for field and brv
};

/// Applies command-line overrides on top of the problem file settings.
void apply_options(ProblemDefinition& problem, const CommandOptions& options);

/// Runs one of bounded, compact, norm, essnorm, field, brv, weight-check,
/// verify. `problem` may be empty only for verify (default sweep).
/// PreconditionError and DomainError are reported with exit code 3.
CommandResult run_command(const std::string& command, const std::optional<ProblemDefinition>& problem,
                          const CommandOptions& options = {});

/// JSON number, with "inf"/"-inf" strings for infinities and null for NaN.
nlohmann::ordered_json json_number(double x);

}  // namespace volterra
