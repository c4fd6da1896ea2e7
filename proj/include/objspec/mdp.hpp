#pragma once

#include "objspec/errors.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace objspec {

/// Tolerance for probability-row normalization checks.
inline constexpr double kProbTol = 1e-12;

/**
 * A finite environment (S, A, T, I): named states and actions, a stochastic
 * transition kernel T[s][a][s'] and an initial state distribution.
 *
 * All tables are index-ordered by declaration order, which makes
 * serialization deterministic. Instances are immutable by convention: every
 * operation takes them by const reference and returns new values.
 */
struct Environment {
    std::vector<std::string> states;
    std::vector<std::string> actions;
    /// transition[s][a][s'] = P(s' | s, a)
    std::vector<std::vector<std::vector<double>>> transition;
    std::vector<double> initial;

    std::size_t n_states() const { return states.size(); }
    std::size_t n_actions() const { return actions.size(); }

    /// Index lookup by name; throws ValidationError for unknown names.
    int state_index(std::string_view name) const;
    int action_index(std::string_view name) const;

    double trans(int s, int a, int s2) const { return transition[s][a][s2]; }
};

/// Stationary stochastic policy: action_probs[s][a] = pi(a | s).
struct Policy {
    std::vector<std::vector<double>> action_probs;

    std::size_t n_states() const { return action_probs.size(); }
    double prob(int s, int a) const { return action_probs[s][a]; }

    bool operator==(const Policy&) const = default;
};

/// Reward function R : S x A x S -> reals, stored densely.
struct RewardFunction {
    std::vector<std::vector<std::vector<double>>> values;

    static RewardFunction zeros(std::size_t n, std::size_t a);

    double at(int s, int a, int s2) const { return values[s][a][s2]; }
    double& at(int s, int a, int s2) { return values[s][a][s2]; }
    double max_abs() const;

    bool operator==(const RewardFunction&) const = default;
};

/// State-to-state chain P_pi[s][s'] = sum_a pi(a|s) T(s,a,s').
struct InducedChain {
    Eigen::MatrixXd matrix;
};

/**
 * Exact long-run structure of a finite chain: recurrent (bottom-SCC) classes
 * with their stationary distributions, transient states with absorption
 * probabilities, and the Cesaro limit matrix P*.
 */
struct ChainDecomposition {
    std::vector<std::vector<int>> classes;      ///< recurrent classes, each sorted
    std::vector<int> transient;                 ///< sorted transient states
    std::vector<Eigen::VectorXd> stationary;    ///< per-class distribution over all states
    Eigen::MatrixXd absorption;                 ///< [n x #classes] absorption probabilities
    Eigen::MatrixXd cesaro;                     ///< [n x n] limit matrix P*
};

/// Checks all Environment invariants; returns the input unchanged on success.
const Environment& validate_environment(const Environment& env);

/// Checks Policy invariants against an environment's shape.
const Policy& validate_policy(const Environment& env, const Policy& policy);

InducedChain induced_chain(const Environment& env, const Policy& policy);

/**
 * Discounted state-visitation vector d[s] = sum_t gamma^t P[s_t = s],
 * solved exactly from d = I + gamma P^T d. Total mass is 1/(1-gamma).
 */
Eigen::VectorXd discounted_visitation(const Environment& env, const Policy& policy,
                                      double gamma);

ChainDecomposition chain_decomposition(const InducedChain& chain);

/// Expected one-step reward per state, r_pi[s] = sum_{a,s'} pi(a|s) T(s,a,s') R(s,a,s').
Eigen::VectorXd expected_reward_vector(const Environment& env, const Policy& policy,
                                       const RewardFunction& reward);

/// Deterministic policy taking the given action index in every state.
Policy deterministic_policy(const Environment& env, const std::vector<int>& action_per_state);

void check_reward_shape(const Environment& env, const RewardFunction& reward);

} // namespace objspec
