#include "volterra/problem.hpp"

#include <algorithm>
#include <cmath>

#include "volterra/expression_parser.hpp"

namespace volterra {

using nlohmann::ordered_json;

namespace {

struct Position {
    std::size_t line = 1;
    std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
    Position pos;
    offset = std::min(offset, text.size());
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    // Position of the first occurrence of "key" in the raw text, or of the document start.
    Position locate(const std::string& key) const {
        const std::string quoted = "\"" + key + "\"";
        const std::size_t at = text_.find(quoted);
        return position_of(text_, at == std::string_view::npos ? 0 : at);
    }

    // Position just inside the string value of "key".
    Position locate_value(const std::string& key) const {
        const std::string quoted = "\"" + key + "\"";
        std::size_t at = text_.find(quoted);
        if (at == std::string_view::npos) return {};
        at = text_.find('"', text_.find(':', at + quoted.size()));
        return position_of(text_, at == std::string_view::npos ? 0 : at + 1);
    }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        const Position p = locate(key);
        throw ParseError("field '" + key + "': " + message, p.line, p.column);
    }

    double number(const ordered_json& obj, const std::string& key) const {
        const auto& v = obj.at(key);
        if (!v.is_number()) fail(key, "expected a number");
        return v.get<double>();
    }

    AnalyticFunction expression(const std::string& key, const std::string& source) const {
        try {
            return parse_expression(source);
        } catch (const ParseError& err) {
            Position p = locate_value(key);
            p.column += err.column() - 1;
            std::string message = err.what();
            message = message.substr(0, message.rfind(" (line "));
            throw ParseError("field '" + key + "': " + message, p.line, p.column);
        } catch (const DomainError& err) {
            const Position p = locate_value(key);
            throw ParseError("field '" + key + "': " + err.what(), p.line, p.column);
        }
    }

    Weight weight(const ordered_json& node, const std::string& key) const {
        if (!node.is_object()) fail(key, "weight must be {\"standard\": a} or {\"table\": [[r, v], ...]}");
        try {
            if (node.contains("standard")) return Weight::standard(number(node, "standard"));
            if (node.contains("table")) {
                const auto& table = node.at("table");
                if (!table.is_array()) fail("table", "expected an array of [r, v] pairs");
                std::vector<std::pair<double, double>> samples;
                for (const auto& row : table) {
                    if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
                        fail("table", "rows must be [r, v] number pairs");
                    samples.emplace_back(row[0].get<double>(), row[1].get<double>());
                }
                return Weight::from_table(std::move(samples));
            }
        } catch (const DomainError& err) {
            fail(key, err.what());
        }
        fail(key, "weight must be {\"standard\": a} or {\"table\": [[r, v], ...]}");
    }

    SpaceSpec space(const ordered_json& node, const std::string& key) const {
        if (!node.is_object() || !node.contains("space") || !node.at("space").is_string())
            fail(key, "space must be an object with a \"space\" name");
        const std::string name = node.at("space").get<std::string>();
        try {
            if (name == "hinf") return SpaceSpec::hinf();
            if (name == "hardy") return SpaceSpec::hardy(node.contains("p") ? number(node, "p") : 2.0);
            if (name == "bergman")
                return SpaceSpec::bergman(node.contains("p") ? number(node, "p") : 2.0,
                                          node.contains("alpha") ? number(node, "alpha") : 0.0);
            if (name == "hv" || name == "hv0" || name == "bv" || name == "bv0") {
                if (!node.contains("weight")) fail(key, "space '" + name + "' needs a weight");
                const Weight v = weight(node.at("weight"), "weight");
                const bool little = name.back() == '0';
                return name[0] == 'h' ? SpaceSpec::hv(v, little) : SpaceSpec::bv(v, little);
            }
        } catch (const DomainError& err) {
            fail(key, err.what());
        }
        fail(key, "unknown space '" + name + "' (hinf, hv, hv0, bv, bv0, hardy, bergman)");
    }

private:
    std::string_view text_;
};

}  // namespace

DiscSelfMap ProblemDefinition::self_map() const {
    if (phi_identity) return DiscSelfMap::identity();
    return DiscSelfMap(phi_map, grid);
}

ProblemDefinition parse_problem(std::string_view text) {
    ProblemDefinition problem;
    ordered_json doc;
    try {
        doc = ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& err) {
        const Position p = position_of(text, err.byte > 0 ? err.byte - 1 : 0);
        throw ParseError(std::string("malformed JSON: ") + err.what(), p.line, p.column);
    }
    if (!doc.is_object()) throw ParseError("problem must be a JSON object", 1, 1);
    problem.source_document = doc;
    const Reader reader(text);

    static const std::vector<std::string> known = {"g",     "phi",   "alpha", "source", "target", "weight", "w",
                                                   "transfer", "route", "grid", "tol",   "seed",   "n_trials"};
    for (const auto& item : doc.items())
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            reader.fail(item.key(), "unknown field");

    if (!doc.contains("g") || !doc.at("g").is_string()) reader.fail("g", "the symbol g is required as a string");
    problem.g_text = doc.at("g").get<std::string>();
    problem.g = reader.expression("g", problem.g_text);

    if (doc.contains("phi")) {
        if (!doc.at("phi").is_string()) reader.fail("phi", "expected an expression string or \"identity\"");
        problem.phi_text = doc.at("phi").get<std::string>();
        if (problem.phi_text != "identity") {
            problem.phi_map = reader.expression("phi", problem.phi_text);
            problem.phi_identity = problem.phi_map.is_identity();
        }
    }

    try {
        if (doc.contains("alpha")) {
            problem.alpha = reader.number(doc, "alpha");
            if (!(*problem.alpha >= 0.0)) reader.fail("alpha", "alpha must be >= 0");
        }
        if (doc.contains("source")) problem.source = reader.space(doc.at("source"), "source");
        if (doc.contains("target")) problem.target = reader.space(doc.at("target"), "target");
        if (doc.contains("weight")) problem.weight = reader.weight(doc.at("weight"), "weight");
        if (doc.contains("w")) problem.second_weight = reader.weight(doc.at("w"), "w");
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("invalid problem: ") + err.what(), 1, 1);
    }

    if (doc.contains("transfer")) {
        const auto& t = doc.at("transfer");
        if (t == "B") problem.transfer = TargetFamily::Bv;
        else if (t == "H") problem.transfer = TargetFamily::Hv;
        else reader.fail("transfer", "expected \"B\" or \"H\"");
    }

    if (doc.contains("route")) {
        if (!doc.at("route").is_string()) reader.fail("route", "expected \"classical\" or \"general\"");
        problem.route = doc.at("route").get<std::string>();
        if (problem.route != "classical" && problem.route != "general")
            reader.fail("route", "expected \"classical\" or \"general\"");
    } else {
        problem.route = (problem.alpha && !problem.source && !problem.target) ? "classical" : "general";
    }

    if (doc.contains("grid")) {
        const auto& grid = doc.at("grid");
        if (!grid.is_object()) reader.fail("grid", "expected {\"J\": n, \"angles\": n}");
        if (grid.contains("J")) {
            if (!grid.at("J").is_number_integer()) reader.fail("J", "expected an integer");
            problem.grid.depth = grid.at("J").get<int>();
        }
        if (grid.contains("angles")) {
            if (!grid.at("angles").is_number_integer()) reader.fail("angles", "expected an integer");
            problem.grid.n_angles = grid.at("angles").get<int>();
        }
        if (problem.grid.depth < 4 || problem.grid.depth > 50) reader.fail("J", "grid depth must lie in 4..50");
        if (problem.grid.n_angles < 8) reader.fail("angles", "at least 8 angles are needed");
    }
    if (doc.contains("tol")) {
        problem.tol = reader.number(doc, "tol");
        if (!(problem.tol > 0.0)) reader.fail("tol", "tolerance must be positive");
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) reader.fail("seed", "expected a nonnegative integer");
        problem.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("n_trials")) {
        if (!doc.at("n_trials").is_number_unsigned()) reader.fail("n_trials", "expected a nonnegative integer");
        problem.n_trials = doc.at("n_trials").get<std::size_t>();
    }
    return problem;
}

}  // namespace volterra
