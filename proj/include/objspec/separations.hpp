#pragma once

#include "objspec/evaluate.hpp"
#include "objspec/lp.hpp"
#include "objspec/objective.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace objspec {

/// Finite fragment of a desired policy ordering over an indexed policy list.
struct OrderingConstraint {
    enum class Relation { StrictlyGreater, Equal };
    struct Pair {
        int i, j;
        Relation rel;
    };
    std::vector<Pair> pairs;
};

/// Outcome of a reward-design feasibility check.
struct FeasibilityResult {
    bool feasible = false;
    double gamma = 0.0;                    ///< the gamma at which a witness was found
    RewardFunction witness;                ///< feasible only
    std::vector<double> regularizer_witness; ///< rrl: one value per support distribution
    double margin = 0.0;                   ///< re-verified strict margin of the witness
    std::vector<std::pair<double, bool>> per_gamma; ///< grid report
};

/// Default feasibility grid {0.05, 0.10, ..., 0.95}.
std::vector<double> default_gamma_grid();

/**
 * Searches for a Markov reward inducing the constraint over the policy list:
 * per gamma, a feasibility LP over reward entries in [-1,1] with strict rows
 * at margin epsilon and exact equality rows. A Feasible answer is accepted
 * only after the witness re-verifies through eval_mr with margin epsilon/2.
 * Infeasible is certified on the grid, not for all gamma.
 */
FeasibilityResult mr_lp_check(const Environment& env, const std::vector<Policy>& policies,
                              const OrderingConstraint& constraint,
                              const std::vector<double>& gamma_grid, double epsilon);

/**
 * Same search over the regularised-RL value J = <m,R> - sum_s d(s) phi(pi(s)),
 * treating the regulariser's value on each distinct action distribution as one
 * additional free variable.
 */
FeasibilityResult rrl_lp_check(const Environment& env, const std::vector<Policy>& policies,
                               const OrderingConstraint& constraint,
                               const std::vector<std::vector<double>>& f_support,
                               const std::vector<double>& gamma_grid, double epsilon);

/// Report of probing J along a policy family shrinking toward a limit policy.
struct ContinuityReport {
    std::vector<double> alphas;
    std::vector<double> values;
    double limit_value = 0.0;
    double tolerance = 0.0;
    bool match = false;
};

/**
 * Evaluates the objective along the alpha-family and at the limit policy;
 * match is |J(alpha_min) - J(limit)| against 10 * alpha_min * c / (1-gamma)^2
 * with c the objective's reward magnitude.
 */
ContinuityReport continuity_probe(const Environment& env,
                                  const std::vector<std::pair<double, Policy>>& family,
                                  const ObjectiveSpec& spec, const Policy& limit_policy);

struct SeparationClaim {
    Formalism formalism;
    bool can_express;
    std::string proof_ref; ///< proposition identifier resolved by the verifier
};

struct SeparationFixture {
    std::string name;
    Environment env;
    double gamma = 0.5; ///< the fixture's own discount
    std::vector<std::string> policy_names;
    std::vector<Policy> policies;
    OrderingConstraint target;
    std::vector<SeparationClaim> claims;
    std::map<std::string, ObjectiveSpec> named_specs;

    int policy_index(const std::string& name) const;
    const Policy& policy(const std::string& name) const;
    const ObjectiveSpec& spec(const std::string& name) const;
};

/// The twelve bundled counterexample environments, self-validated on first load.
const std::vector<SeparationFixture>& fixtures();

const SeparationFixture& fixture(const std::string& name);

struct CheckResult {
    std::string claim;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct SeparationReport {
    std::string fixture;
    std::vector<CheckResult> checks;
    bool pass = false;

    nlohmann::json to_json() const;
};

/// Replays every closed-form value and feasibility/continuity claim of a fixture.
SeparationReport run_separation(const std::string& name);
SeparationReport run_separation(const SeparationFixture& fixture);

} // namespace objspec
