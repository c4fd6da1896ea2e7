#pragma once

#include "objspec/ltl.hpp"
#include "objspec/objective.hpp"

#include <cstdint>
#include <optional>

namespace objspec {

/// Result of compiling a reward machine against an environment.
struct RmProduct {
    Environment env;                       ///< product environment over reachable (s, u)
    RewardFunction reward;                 ///< product reward
    std::vector<std::pair<int, int>> pairs; ///< product state index -> (env state, machine state)
};

/// Product construction making reward-machine evaluation a plain MR evaluation.
RmProduct compile_rm_product(const Environment& env, const RewardMachine& machine);

/// Lifts a policy over env states to the product's (s, u) states.
Policy lift_policy(const RmProduct& product, const Policy& policy);

double eval_rm(const Environment& env, const Policy& policy, const RewardMachine& machine);

double eval_rrl(const Environment& env, const Policy& policy, const RewardFunction& reward,
                double alpha, const ActionDistFn& regularizer, double gamma);

double eval_onmr(const Environment& env, const Policy& policy, const RewardFunction& reward,
                 const ScalarFn& wrapper, double gamma);
double eval_omorl(const Environment& env, const Policy& policy,
                  const std::vector<RewardFunction>& rewards, const VectorFn& wrapper,
                  double gamma);
double eval_fomr(const Environment& env, const Policy& policy, const OccupancyFn& f,
                 double gamma);

/// Component-wise MR evaluations <J_1(pi), ..., J_k(pi)>.
std::vector<double> policy_eval_vector(const Environment& env, const Policy& policy,
                                       const std::vector<RewardFunction>& rewards, double gamma);

Ordering gomorl_compare(const std::vector<double>& v1, const std::vector<double>& v2,
                        const VectorPreorder& preorder);

/// Evaluation mode for the trajectory-space formalisms.
struct MonteCarlo {
    std::size_t samples = 10000;
    std::size_t horizon = 200;
    std::uint64_t seed = 0;
    std::optional<double> lipschitz; ///< of the wrapper, for the truncation bound
};

struct McMetadata {
    double std_error = 0.0;
    std::optional<double> bias_bound; ///< absent = unbounded-bias estimate
    std::size_t samples = 0;
    std::size_t horizon = 0;
};

/// Exact evaluation by exhaustive lasso enumeration; NotLassoEnumerable otherwise.
double eval_trajectory_exact(const Environment& env, const Policy& policy,
                             const ObjectiveSpec& spec);

/// Sample-mean estimate over truncated trajectories.
double eval_trajectory_monte_carlo(const Environment& env, const Policy& policy,
                                   const ObjectiveSpec& spec, const MonteCarlo& mc,
                                   McMetadata* meta = nullptr);

/// True for FTR / INMR / IMORL.
bool is_trajectory_formalism(Formalism f);

/**
 * Scalar policy value under any formalism that defines one; throws
 * DimensionMismatch for the pure-preorder formalisms (OMO, TLO, GOMORL, PO).
 * Trajectory formalisms are evaluated exactly (lasso enumeration).
 */
double evaluate(const Environment& env, const Policy& policy, const ObjectiveSpec& spec);

/// Three-way comparison of two policies under any of the seventeen formalisms.
Ordering compare(const Environment& env, const Policy& pi1, const Policy& pi2,
                 const ObjectiveSpec& spec);

} // namespace objspec
