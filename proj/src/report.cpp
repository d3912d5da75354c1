#include "volterra/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "volterra/oracle.hpp"

namespace volterra {

using nlohmann::ordered_json;

namespace {

constexpr const char* kUnivalence =
    "univalent-case criterion: the classical radial criteria are proven for univalent g; "
    "the schlicht advisory is only a necessary condition for univalence";
constexpr const char* kEquivalence =
    "two-sided equivalence: the constants are not quantified; the criterion value is reported as is "
    "and the oracle value is a lower bound for the operator norm";
constexpr const char* kBracket =
    "B_v point evaluations have no closed form; values use the upper end of the evaluation-norm bracket";
constexpr const char* kOrigin =
    "phi(0) != 0: T f(0) need not vanish, so the B_v value is bracketed by the derivative formula "
    "and the formula plus a bound for |T f(0)|";
constexpr const char* kBoundary = "boundary limits are extrapolated from a grid ending at r_max = 1 - 2^-J";

RadialOptions radial_options(const ProblemDefinition& p) {
    RadialOptions r;
    r.depth = p.grid.depth;
    r.n_angles = p.grid.n_angles;
    return r;
}

EstimatorOptions estimator_options(const ProblemDefinition& p) {
    EstimatorOptions o;
    o.grid = p.grid;
    o.tol = p.tol;
    return o;
}

ordered_json numbers(const std::vector<double>& xs) {
    ordered_json out = ordered_json::array();
    for (double x : xs) out.push_back(json_number(x));
    return out;
}

ordered_json limit_json(const LimitFit& fit) {
    return {{"kind", to_string(fit.kind)},       {"estimate", json_number(fit.estimate)},
            {"lower", json_number(fit.lower)},   {"upper", json_number(fit.upper)},
            {"last", json_number(fit.last)},     {"method", fit.method}};
}

ordered_json point_json(Complex z) {
    return {{"re", json_number(z.real())},
            {"im", json_number(z.imag())},
            {"r", json_number(std::abs(z))},
            {"theta", json_number(std::arg(z))}};
}

ordered_json estimate_json(const NormEstimate& e) {
    ordered_json out{{"kind", to_string(e.kind)},
                     {"lower", json_number(e.lower)},
                     {"upper", json_number(e.upper)},
                     {"grid_sup", json_number(e.grid_sup)},
                     {"unbounded", e.unbounded},
                     {"argmax", point_json(e.argmax)},
                     {"resolution", {{"J", e.resolution.depth}, {"angles", e.resolution.n_angles}}},
                     {"notes", e.notes}};
    if (!e.sequence.empty() || e.limit) {
        out["sequence"] = numbers(e.sequence);
        if (e.limit) out["limit"] = limit_json(*e.limit);
        out["compact"] = to_string(e.compact);
    }
    return out;
}

ordered_json schlicht_json(const std::optional<SchlichtReport>& s) {
    if (!s) return nullptr;
    return {{"max_value", json_number(s->max_value)},
            {"argmax", point_json(s->argmax)},
            {"passes", s->passes},
            {"skipped", s->skipped},
            {"bound", 6}};
}

ordered_json oracle_json(const OracleReport& o) {
    return {{"lower_bound", json_number(o.lower_bound)},
            {"n_trials", o.n_trials},
            {"n_structured", o.n_structured},
            {"best_witness", o.best_witness},
            {"consistency", json_number(o.consistency)}};
}

int exit_for(Decision d) { return d == Decision::undecided ? kExitUndecided : kExitVerdict; }

ordered_json skeleton(const std::string& command, const std::optional<ProblemDefinition>& problem) {
    ordered_json report;
    report["command"] = command;
    if (problem) {
        const ProblemDefinition& p = *problem;
        ordered_json echo;
        echo["g"] = p.g_text;
        echo["phi"] = p.phi_text;
        echo["route"] = p.route;
        echo["alpha"] = p.alpha ? json_number(*p.alpha) : ordered_json(nullptr);
        echo["source"] = p.source ? ordered_json(p.source->tag()) : ordered_json(nullptr);
        echo["target"] = p.target ? ordered_json(p.target->tag()) : ordered_json(nullptr);
        echo["weight"] = p.weight ? ordered_json(p.weight->description()) : ordered_json(nullptr);
        echo["w"] = p.second_weight ? ordered_json(p.second_weight->description()) : ordered_json(nullptr);
        echo["transfer"] = p.transfer ? ordered_json(*p.transfer == TargetFamily::Bv ? "B" : "H")
                                      : ordered_json(nullptr);
        echo["grid"] = {{"J", p.grid.depth}, {"angles", p.grid.n_angles}};
        echo["tol"] = json_number(p.tol);
        echo["seed"] = p.seed;
        echo["n_trials"] = p.n_trials;
        echo["document"] = p.source_document;
        report["problem"] = echo;
    } else {
        report["problem"] = nullptr;
    }
    report["criterion"] = nullptr;
    report["estimate"] = nullptr;
    report["oracle"] = nullptr;
    report["verdict"] = nullptr;
    report["caveats"] = ordered_json::array();
    return report;
}

void set_criterion(ordered_json& report, const std::string& tag, const std::string& description) {
    report["criterion"] = {{"tag", tag}, {"description", description}};
}

void set_verdict(CommandResult& result, const std::string& decision, int exit_code) {
    result.exit_code = exit_code;
    result.report["verdict"] = {{"decision", decision}, {"exit_code", exit_code}};
}

void caveat(ordered_json& report, const std::string& text) {
    auto& list = report["caveats"];
    if (std::find(list.begin(), list.end(), text) == list.end()) list.push_back(text);
}

const ProblemDefinition& need(const std::optional<ProblemDefinition>& p, const std::string& command) {
    if (!p) throw PreconditionError("command '" + command + "' needs --problem");
    return *p;
}

double classical_alpha(const ProblemDefinition& p) {
    if (!p.alpha) throw PreconditionError("the classical route needs \"alpha\"");
    if (!p.phi_identity) throw PreconditionError("the classical route is stated for phi = identity");
    return *p.alpha;
}

SpaceSpec classical_source(double alpha) {
    return alpha == 0.0 ? SpaceSpec::hinf() : SpaceSpec::hv(Weight::standard(alpha));
}

void require_pair(const ProblemDefinition& p) {
    if (!p.source || !p.target)
        throw PreconditionError(
            "no criterion in scope: give \"source\" and \"target\", or \"alpha\" with route classical; "
            "supported: any X -> Bv_inf/Bv_0, any X -> Hv_inf/Hv_0 (normal v), "
            "Hv_alpha or Hinf -> Hinf with the identity map");
}

void add_space_caveats(ordered_json& report, const ProblemDefinition& p, const std::string& tag) {
    if (p.source && p.source->is_bloch_type()) caveat(report, kBracket);
    if ((p.target && p.target->is_growth_type()) || tag.rfind("Thm3.6", 0) == 0 || tag.rfind("Cor3.7", 0) == 0)
        caveat(report, kEquivalence);
    if (tag == "Thm2.3" || tag == "Thm2.5") caveat(report, kUnivalence);
}

// ---------------------------------------------------------------- bounded / norm

void classical_bounded(CommandResult& result, const ProblemDefinition& p, bool norm) {
    const double alpha = classical_alpha(p);
    const ClassicalBoundedness cb = classical_boundedness(p.g, alpha, radial_options(p));
    set_criterion(result.report, "Thm2.3",
                  "sup over angles of the radial integral of |g'|(1-r^2)^-alpha is finite");
    ordered_json est = estimate_json(cb.estimate);
    if (cb.sup) {
        est["sup_theta"] = {{"sup", json_number(cb.sup->sup)},
                            {"sup_limit", json_number(cb.sup->sup_limit)},
                            {"argmax_theta", json_number(cb.sup->argmax_theta)},
                            {"growth", to_string(cb.sup->growth)},
                            {"growth_slope", json_number(cb.sup->growth_slope)},
                            {"r_max_depth", cb.sup->r_max_depth}};
    }
    est["schlicht"] = schlicht_json(cb.schlicht);
    result.report["estimate"] = est;
    if (cb.bounded == Decision::holds) {
        const DiscSelfMap id = DiscSelfMap::identity();
        OracleReport o =
            mc_norm_lower_bound(p.g, id, classical_source(alpha), SpaceSpec::hinf(), p.n_trials, p.seed, p.grid);
        o.consistency = cb.estimate.upper > 0 ? o.lower_bound / cb.estimate.upper : 0.0;
        result.report["oracle"] = oracle_json(o);
    }
    caveat(result.report, kUnivalence);
    if (cb.schlicht && !cb.schlicht->passes)
        caveat(result.report, "the schlicht test certifies that g is not univalent; the criterion may not apply");
    std::string decision = cb.verdict;
    if (norm && cb.bounded == Decision::holds) decision = "estimated";
    set_verdict(result, decision, exit_for(cb.bounded));
}

void general_bounded(CommandResult& result, const ProblemDefinition& p, bool norm) {
    require_pair(p);
    const DiscSelfMap phi = p.self_map();
    const PairEstimate pair = estimate_pair(p.g, phi, *p.source, *p.target, p.grid);
    const std::string description =
        pair.tag == "Thm3.3ii"  ? "sup of v(z)|(g o phi)'(z)| ||delta_phi(z)||_X (exact norm)"
        : pair.tag == "Thm3.3i" ? "sup of (1-|z|)v(z)|(g o phi)'(z)| ||delta_phi(z)||_X (up to constants)"
                                : "sup over angles of the radial integral of |g'|(1-r^2)^-alpha";
    set_criterion(result.report, pair.tag, description);
    ordered_json est = estimate_json(pair.estimate);
    est["rigorous_upper"] = pair.rigorous;
    result.report["estimate"] = est;

    Decision bounded = Decision::holds;
    if (pair.estimate.unbounded || !std::isfinite(pair.estimate.upper)) bounded = Decision::fails;
    else if (pair.tag == "Thm2.3" && !pair.rigorous) bounded = Decision::undecided;

    if (bounded == Decision::holds) {
        OracleReport o = mc_norm_lower_bound(p.g, phi, *p.source, *p.target, p.n_trials, p.seed, p.grid);
        o.consistency = pair.estimate.upper > 0 ? o.lower_bound / pair.estimate.upper : 0.0;
        result.report["oracle"] = oracle_json(o);
    }
    add_space_caveats(result.report, p, pair.tag);
    if (pair.tag == "Thm3.3ii" && std::abs(phi(0.0)) > 0.0) caveat(result.report, kOrigin);
    std::string decision = bounded == Decision::holds ? "bounded" : bounded == Decision::fails ? "unbounded" : "undecided";
    if (norm && bounded == Decision::holds) decision = "estimated";
    set_verdict(result, decision, exit_for(bounded));
}

// ---------------------------------------------------------------- compactness

std::optional<double> bergman_alpha(const SpaceSpec& X) {
    if (X.kind() == SpaceKind::bergman) return X.alpha();
    return std::nullopt;
}

// Essential-norm route; returns the compactness decision of the operator into the big space.
Decision essential_norm(CommandResult& result, const ProblemDefinition& p, const DiscSelfMap& phi) {
    require_pair(p);
    const SpaceSpec& X = *p.source;
    const SpaceSpec& Y = *p.target;
    if (!Y.is_growth_type() && !Y.is_bloch_type())
        throw PreconditionError("no essential-norm criterion in scope for " + X.tag() + " -> " + Y.tag() +
                                "; supported targets: Hv_inf, Hv_0 (normal v), Bv_inf, Bv_0; "
                                "use route classical for Hv_alpha -> Hinf");
    const EstimatorOptions opts = estimator_options(p);
    const Weight& v = Y.weight();
    const bool growth = Y.is_growth_type();
    const NormEstimate ess = growth ? essnorm_into_Hv(p.g, phi, X, v, opts) : essnorm_into_Bv(p.g, phi, X, v, opts);
    const std::string tag = growth ? "Thm3.6i" : "Thm3.6ii";
    set_criterion(result.report, tag,
                  growth ? "limsup as |phi(z)| -> 1 of (1-|z|)v(z)|(g o phi)'(z)| ||delta_phi(z)||_X"
                         : "limsup as |phi(z)| -> 1 of v(z)|(g o phi)'(z)| ||delta_phi(z)||_X");
    ordered_json est = estimate_json(ess);
    if (X.kind() == SpaceKind::hardy || X.kind() == SpaceKind::bergman) {
        const TargetFamily family = growth ? TargetFamily::Hv : TargetFamily::Bv;
        const NormEstimate cor = corollary_specializations(p.g, phi, X.p(), bergman_alpha(X), v, family, opts);
        const std::string ctag = corollary_tag(bergman_alpha(X), family);
        est["corollary"] = {{"tag", ctag}, {"estimate", estimate_json(cor)}};
        result.report["criterion"]["also"] = ordered_json::array({ctag});
        add_space_caveats(result.report, p, ctag);
    }
    if (!phi.boundary_touching())
        est["note"] = "phi maps into a smaller disc; the limsup is over an empty set and the operator is compact";
    result.report["estimate"] = est;
    add_space_caveats(result.report, p, tag);
    caveat(result.report, kBoundary);
    return ess.compact;
}

std::string compact_word(Decision d) {
    return d == Decision::holds ? "compact" : d == Decision::fails ? "noncompact" : "undecided";
}

ordered_json transfer_json(const LittleSpaceResult& t, TargetFamily flavor) {
    return {{"flavor", flavor == TargetFamily::Bv ? "B" : "H"},
            {"membership", to_string(t.membership)},
            {"sup_tail", json_number(t.sup_tail)},
            {"sequence", numbers(t.sequence)},
            {"limit", limit_json(t.limit)}};
}

void classical_compact(CommandResult& result, const ProblemDefinition& p) {
    const double alpha = classical_alpha(p);
    const ClassicalCompactness cc = classical_compactness(p.g, alpha, radial_options(p), p.tol);
    set_criterion(result.report, "Thm2.5",
                  "sup over angles of the radial integral of |g'|(1-r^2)^-alpha over [t, 1) vanishes as t -> 1");
    ordered_json est;
    if (cc.profile) {
        const RadialProfile& prof = *cc.profile;
        est["r_max"] = json_number(prof.r_max);
        est["cutoffs"] = numbers(prof.cutoffs);
        est["sup_tails"] = numbers(prof.sup_tails);
        est["sup_tails_limit"] = numbers(prof.sup_tails_limit);
        est["tail_limit"] = limit_json(prof.tail_limit);
        est["witness_theta"] = json_number(prof.witness_theta);
        est["witness_growth"] = to_string(prof.witness_growth);
    }
    est["schlicht"] = schlicht_json(cc.schlicht);
    result.report["estimate"] = est;
    caveat(result.report, kUnivalence);
    caveat(result.report, kBoundary);
    set_verdict(result, cc.verdict, exit_for(cc.compact));
}

void condition9(CommandResult& result, const ProblemDefinition& p) {
    const DiscSelfMap phi = p.self_map();
    const Condition9Result c = cor312_condition9(p.g, phi, *p.weight, *p.second_weight, estimator_options(p));
    set_criterion(result.report, "Cor3.12",
                  "(1-|z|)|(g o phi)'(z)| w(z) / v(phi(z)) -> 0 as |phi(z)| -> 1");
    result.report["estimate"] = {{"sequence", numbers(c.sequence)},
                                 {"limit", limit_json(c.limit)},
                                 {"equivalence_ratio", json_number(c.equivalence_ratio)},
                                 {"holds", to_string(c.holds)}};
    caveat(result.report, kBoundary);
    set_verdict(result, c.verdict.empty() ? std::string(to_string(c.holds)) : c.verdict, exit_for(c.holds));
}

void transfer_only(CommandResult& result, const ProblemDefinition& p) {
    const DiscSelfMap phi = p.self_map();
    const TargetFamily flavor = p.transfer.value_or(TargetFamily::Bv);
    const LittleSpaceResult t = little_space_transfer(p.g, phi, *p.weight, flavor, estimator_options(p));
    set_criterion(result.report, "Thm3.11",
                  flavor == TargetFamily::Bv ? "g o phi belongs to B_v^0"
                                             : "g o phi belongs to B_w^0 with w = (1-|z|)v, that is H_v^0");
    result.report["estimate"] = transfer_json(t, flavor);
    caveat(result.report, kBoundary);
    const std::string decision = t.membership == Decision::holds  ? "member"
                                 : t.membership == Decision::fails ? "not-member"
                                                                   : "undecided";
    set_verdict(result, decision, exit_for(t.membership));
}

void compact_command(CommandResult& result, const ProblemDefinition& p, bool essnorm_only) {
    if (p.classical()) {
        if (essnorm_only) throw PreconditionError("essnorm needs \"source\" and \"target\" spaces");
        classical_compact(result, p);
        return;
    }
    if (!essnorm_only && !p.target && p.weight && p.second_weight) {
        condition9(result, p);
        return;
    }
    if (!essnorm_only && !p.target && p.weight) {
        transfer_only(result, p);
        return;
    }
    const DiscSelfMap phi = p.self_map();
    const Decision big = essential_norm(result, p, phi);
    Decision decision = big;
    if (!essnorm_only && p.target->is_little()) {
        const TargetFamily flavor = p.target->is_growth_type() ? TargetFamily::Hv : TargetFamily::Bv;
        const LittleSpaceResult t =
            little_space_transfer(p.g, phi, p.target->weight(), flavor, estimator_options(p));
        result.report["estimate"]["transfer"] = transfer_json(t, flavor);
        auto& also = result.report["criterion"]["also"];
        if (also.is_null()) also = ordered_json::array();
        also.push_back("Thm3.11");
        if (big == Decision::fails || t.membership == Decision::fails) decision = Decision::fails;
        else if (big == Decision::holds && t.membership == Decision::holds) decision = Decision::holds;
        else decision = Decision::undecided;
    }
    set_verdict(result, compact_word(decision), exit_for(decision));
}

// ---------------------------------------------------------------- field / brv / weights

void field_command(CommandResult& result, const ProblemDefinition& p) {
    if (!p.source) throw PreconditionError("field needs a \"source\" space");
    std::optional<Weight> v = p.target && p.target->has_weight() ? std::optional<Weight>(p.target->weight()) : p.weight;
    if (!v) throw PreconditionError("field needs a weight: a weighted \"target\" or \"weight\"");
    const DiscSelfMap phi = p.self_map();
    const SymbolField f = symbol_field(p.g, phi, *p.source, *v, p.grid);
    std::ostringstream csv;
    write_csv(f, csv);
    result.csv = csv.str();
    set_criterion(result.report, "Thm3.3", "pointwise symbol field on the polar grid");
    const auto hmax = std::max_element(f.sigma_h_upper.begin(), f.sigma_h_upper.end());
    const auto bmax = std::max_element(f.sigma_b_upper.begin(), f.sigma_b_upper.end());
    const auto locate = [&](std::vector<double>::const_iterator it, const std::vector<double>& data) {
        const std::size_t i = static_cast<std::size_t>(it - data.begin());
        const std::size_t n = f.angles.size();
        return ordered_json{{"r", json_number(f.radii[i / n])}, {"theta", json_number(f.angles[i % n])}};
    };
    result.report["estimate"] = {{"rows", f.radii.size() * f.angles.size()},
                                 {"rings", f.radii.size()},
                                 {"angles", f.angles.size()},
                                 {"closed_form", f.closed_form},
                                 {"max_sigma_H", json_number(*hmax)},
                                 {"argmax_sigma_H", locate(hmax, f.sigma_h_upper)},
                                 {"max_sigma_B", json_number(*bmax)},
                                 {"argmax_sigma_B", locate(bmax, f.sigma_b_upper)},
                                 {"columns", {"r", "theta", "sigma_H", "sigma_B", "phi_abs", "sigma_H_lower",
                                              "sigma_B_lower"}}};
    if (p.source->is_bloch_type()) caveat(result.report, kBracket);
    set_verdict(result, "exported", kExitVerdict);
}

void brv_command(CommandResult& result, const ProblemDefinition& p) {
    const RadialOptions opts = radial_options(p);
    const MembershipResult brv = brv_membership(p.g, opts);
    const RadialProfile profile = tail_sup_profile(p.g, 0.0, opts);
    std::ostringstream csv;
    write_csv(profile, csv);
    result.csv = csv.str();
    MembershipResult brv0;
    brv0.witness_theta = profile.witness_theta;
    brv0.value = profile.tail_limit.estimate;
    brv0.member = profile.vanishes(p.tol);
    brv0.verdict = brv0.member == Decision::holds ? "in-BRV_0" : brv0.member == Decision::fails ? "not-in-BRV_0" : "undecided";
    set_criterion(result.report, "Thm2.3", "bounded radial variation of g (alpha = 0)");
    result.report["criterion"]["also"] = ordered_json::array({"Thm2.5"});
    const auto member = [](const MembershipResult& m) {
        return ordered_json{{"member", to_string(m.member)},
                            {"verdict", m.verdict},
                            {"value", json_number(m.value)},
                            {"witness_theta", json_number(m.witness_theta)}};
    };
    result.report["estimate"] = {{"BRV", member(brv)},
                                 {"BRV_0", member(brv0)},
                                 {"sup_tails", numbers(profile.sup_tails)},
                                 {"tail_limit", limit_json(profile.tail_limit)}};
    caveat(result.report, kUnivalence);
    caveat(result.report, kBoundary);
    set_verdict(result, brv.verdict + ", " + brv0.verdict,
                brv.member == Decision::undecided || brv0.member == Decision::undecided ? kExitUndecided
                                                                                         : kExitVerdict);
}

void weight_check(CommandResult& result, const ProblemDefinition& p) {
    std::optional<Weight> v = p.weight;
    if (!v && p.target && p.target->has_weight()) v = p.target->weight();
    if (!v && p.source && p.source->has_weight()) v = p.source->weight();
    if (!v && p.alpha && *p.alpha > 0) v = Weight::standard(*p.alpha);
    if (!v) throw PreconditionError("weight-check needs a weight (\"weight\", a weighted space or alpha > 0)");
    const NormalityReport n = is_normal(*v);
    set_criterion(result.report, "normal-weight", "dyadic ratio conditions and monotonicity of v");
    const DiscGrid grid(p.grid);
    double ratio = 1.0;
    for (double r : grid.radii()) ratio = std::max(ratio, associated_weight(*v, r) / (*v)(r));
    result.report["estimate"] = {{"weight", v->description()},
                                 {"cond1", json_number(n.cond1)},
                                 {"cond2", json_number(n.cond2)},
                                 {"log_cond2", json_number(n.log_cond2)},
                                 {"cond2_bounded", n.cond2_bounded},
                                 {"nonincreasing", n.nonincreasing},
                                 {"decidable", n.decidable},
                                 {"note", n.note},
                                 {"associated_ratio_max", json_number(ratio)}};
    if (!n.decidable) {
        set_verdict(result, "undecidable", kExitUndecided);
        return;
    }
    set_verdict(result, n.normal ? "normal" : "not-normal", kExitVerdict);
}

// ---------------------------------------------------------------- verify

void verify_command(CommandResult& result, const std::optional<ProblemDefinition>& problem) {
    std::vector<SweepCase> cases;
    std::size_t n_trials = 200;
    std::uint64_t seed = 1;
    GridSpec grid{};
    if (problem) {
        const ProblemDefinition& p = *problem;
        n_trials = p.n_trials;
        seed = p.seed;
        grid = p.grid;
        if (p.source && p.target) {
            cases.push_back({"problem", p.g, p.self_map(), *p.source, *p.target});
        } else if (p.alpha) {
            const double alpha = classical_alpha(p);
            cases.push_back({"problem", p.g, DiscSelfMap::identity(), classical_source(alpha), SpaceSpec::hinf()});
        }
    }
    if (cases.empty()) cases = default_sweep_cases();
    const SweepReport sweep = consistency_sweep(cases, n_trials, seed, grid);
    set_criterion(result.report, "consistency",
                  "oracle lower bound <= estimator upper bracket + 1e-6 whenever the bracket is rigorous");
    ordered_json entries = ordered_json::array();
    for (const SweepEntry& e : sweep.entries) {
        entries.push_back({{"name", e.name},
                           {"tag", e.tag},
                           {"estimator_lower", json_number(e.estimator_lower)},
                           {"estimator_upper", json_number(e.estimator_upper)},
                           {"kind", to_string(e.kind)},
                           {"rigorous", e.rigorous},
                           {"oracle", oracle_json(e.oracle)},
                           {"ratio", json_number(e.ratio)},
                           {"hard_failure", e.hard_failure}});
    }
    result.report["estimate"] = {{"cases", sweep.entries.size()}, {"hard_failures", sweep.hard_failures}};
    result.report["oracle"] = {{"entries", entries}};
    caveat(result.report, "ratios for non-rigorous brackets are informative only");
    if (sweep.hard_failures > 0) set_verdict(result, "hard-failure", kExitError);
    else set_verdict(result, "consistent", kExitVerdict);
}

}  // namespace

ordered_json json_number(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

void apply_options(ProblemDefinition& problem, const CommandOptions& options) {
    if (options.grid_depth) {
        if (*options.grid_depth < 4 || *options.grid_depth > 50) throw DomainError("--grid-J must lie in 4..50");
        problem.grid.depth = *options.grid_depth;
    }
    if (options.angles) {
        if (*options.angles < 8) throw DomainError("--angles must be at least 8");
        problem.grid.n_angles = *options.angles;
    }
    if (options.refine) problem.grid.n_angles *= 2;
    if (options.tol) {
        if (!(*options.tol > 0)) throw DomainError("--tol must be positive");
        problem.tol = *options.tol;
    }
    if (options.seed) problem.seed = *options.seed;
    if (options.n_trials) problem.n_trials = *options.n_trials;
}

CommandResult run_command(const std::string& command, const std::optional<ProblemDefinition>& problem_in,
                          const CommandOptions& options) {
    std::optional<ProblemDefinition> problem = problem_in;
    CommandResult result;
    result.report = skeleton(command, problem);
    try {
        if (problem) {
            apply_options(*problem, options);
            result.report = skeleton(command, problem);
        }
        if (command == "bounded" || command == "norm") {
            const ProblemDefinition& p = need(problem, command);
            if (p.classical()) classical_bounded(result, p, command == "norm");
            else general_bounded(result, p, command == "norm");
        } else if (command == "compact" || command == "essnorm") {
            compact_command(result, need(problem, command), command == "essnorm");
        } else if (command == "field") {
            field_command(result, need(problem, command));
        } else if (command == "brv") {
            brv_command(result, need(problem, command));
        } else if (command == "weight-check") {
            weight_check(result, need(problem, command));
        } else if (command == "verify") {
            verify_command(result, problem);
        } else {
            throw PreconditionError("unknown command '" + command + "'");
        }
    } catch (const PreconditionError& err) {
        result.report["error"] = err.what();
        set_verdict(result, "precondition-failed", kExitPrecondition);
    } catch (const DomainError& err) {
        result.report["error"] = err.what();
        set_verdict(result, "precondition-failed", kExitPrecondition);
    } catch (const IntegrandError& err) {
        result.report["error"] = err.what();
        set_verdict(result, "precondition-failed", kExitPrecondition);
    } catch (const DegenerateSymbolError& err) {
        result.report["error"] = err.what();
        set_verdict(result, "precondition-failed", kExitPrecondition);
    }
    return result;
}

}  // namespace volterra
