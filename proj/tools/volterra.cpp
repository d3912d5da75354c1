// volterra: norms, essential norms and verdicts for generalized Volterra operators.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "volterra/report.hpp"

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Norm, essential-norm and compactness estimates for T_g^phi f(z) = int_0^phi(z) f g'"};
    std::string command;
    std::string problem_path;
    std::string out_path;
    std::string report_path;
    std::string csv_path;
    volterra::CommandOptions options;
    int grid_depth = 0;
    int angles = 0;
    double tol = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 0;

    app.add_option("command", command, "bounded|compact|norm|essnorm|field|brv|weight-check|verify")
        ->required()
        ->check(CLI::IsMember({"bounded", "compact", "norm", "essnorm", "field", "brv", "weight-check", "verify"}));
    app.add_option("--problem", problem_path, "problem definition (JSON)");
    auto* o_depth = app.add_option("--grid-J", grid_depth, "grid depth J, r_max = 1 - 2^-J");
    auto* o_angles = app.add_option("--angles", angles, "angles per ring");
    auto* o_tol = app.add_option("--tol", tol, "threshold on extrapolated limits");
    auto* o_seed = app.add_option("--seed", seed, "oracle seed");
    auto* o_trials = app.add_option("--trials", trials, "oracle random trials");
    app.add_option("--out", out_path, "output file: the CSV grid for field, the JSON report otherwise");
    app.add_option("--report", report_path, "field only: JSON report file");
    app.add_option("--csv", csv_path, "brv only: tail profile CSV file");
    app.add_flag("--refine", options.refine, "double the angular resolution");

    CLI11_PARSE(app, argc, argv);
    if (*o_depth) options.grid_depth = grid_depth;
    if (*o_angles) options.angles = angles;
    if (*o_tol) options.tol = tol;
    if (*o_seed) options.seed = seed;
    if (*o_trials) options.n_trials = trials;

    std::optional<volterra::ProblemDefinition> problem;
    if (problem_path.empty()) {
        if (command != "verify") {
            std::cerr << "error: --problem is required for '" << command << "'\n";
            return volterra::kExitError;
        }
    } else {
        std::ifstream in(problem_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read " << problem_path << '\n';
            return volterra::kExitError;
        }
        const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        try {
            problem = volterra::parse_problem(text);
        } catch (const volterra::ParseError& err) {
            std::cerr << problem_path << ": " << err.what() << '\n';
            return volterra::kExitError;
        }
    }

    volterra::CommandResult result;
    try {
        result = volterra::run_command(command, problem, options);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return volterra::kExitError;
    }
    result.report["generated_at"] = utc_timestamp();
    const std::string json = result.report.dump(2) + "\n";

    bool ok = true;
    if (command == "field" && !result.csv.empty()) {
        if (out_path.empty()) std::cout << result.csv;
        else ok = write_file(out_path, result.csv);
        if (!report_path.empty()) ok = write_file(report_path, json) && ok;
        else if (!out_path.empty()) std::cout << json;
    } else {
        if (out_path.empty()) std::cout << json;
        else ok = write_file(out_path, json);
        if (command == "brv" && !csv_path.empty()) ok = write_file(csv_path, result.csv) && ok;
    }
    if (!ok) {
        std::cerr << "error: cannot write output\n";
        return volterra::kExitError;
    }
    if (result.report.contains("error")) std::cerr << "error: " << result.report["error"].get<std::string>() << '\n';
    return result.exit_code;
}
