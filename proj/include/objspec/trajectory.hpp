#pragma once

#include "objspec/mdp.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace objspec {

/// One environment transition by index.
struct Transition {
    int s, a, s2;
    auto operator<=>(const Transition&) const = default;
};

/// s0,a0,s1,...,s_k as a start state plus k transitions.
struct TrajectoryPrefix {
    int start = 0;
    std::vector<Transition> steps;
    auto operator<=>(const TrajectoryPrefix&) const = default;
};

/// Exact distribution over depth-k prefixes.
struct PrefixDistribution {
    int depth = 0;
    std::map<TrajectoryPrefix, double> probs;

    double total() const;
    /// Truncate every prefix to the given smaller depth and merge masses.
    PrefixDistribution marginalize(int depth) const;
    double total_variation(const PrefixDistribution& other) const;
};

inline constexpr std::size_t kPrefixCap = 1'000'000;

PrefixDistribution prefix_distribution(const Environment& env, const Policy& policy, int depth,
                                       std::size_t cap = kPrefixCap);

/**
 * Eventually-periodic trajectory: a finite stem followed by a repeated cycle,
 * with the exact probability of the policy producing it.
 */
struct Lasso {
    std::vector<Transition> stem;
    std::vector<Transition> cycle; ///< nonempty; last transition feeds the first
    double probability = 0.0;
};

/// Discounted return of a lasso in closed form.
double lasso_return(const Lasso& lasso, const RewardFunction& reward, double gamma);

/// Average (Cesaro) reward of a lasso: the mean over its cycle.
double lasso_average_reward(const Lasso& lasso, const RewardFunction& reward);

/**
 * Enumerates the full trajectory set of (env, policy), which is finite exactly
 * when the positive-support graph takes a single transition out of every
 * vertex that lies on a cycle (and hence everywhere a trajectory can end up).
 * Throws NotLassoEnumerable otherwise.
 */
std::vector<Lasso> enumerate_lassos(const Environment& env, const Policy& policy);

/// Spec-level convenience: lassos paired with their discounted returns.
std::vector<std::pair<Lasso, double>> enumerate_lassos(const Environment& env,
                                                       const Policy& policy,
                                                       const RewardFunction& reward,
                                                       double gamma);

/**
 * Either a full eventually-periodic trajectory (cycle nonempty) or a
 * truncated sample (cycle empty); the common currency of trajectory
 * callbacks.
 */
struct TrajectoryView {
    int start = 0;
    std::span<const Transition> stem;
    std::span<const Transition> cycle;

    bool truncated() const { return cycle.empty(); }
};

TrajectoryView view_of(const Lasso& lasso);

} // namespace objspec
