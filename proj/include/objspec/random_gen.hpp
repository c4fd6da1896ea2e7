#pragma once

#include "objspec/mdp.hpp"

#include <random>

namespace objspec {

/// Dense random environment: every row a random distribution.
Environment random_environment(std::mt19937_64& rng, int max_states, int max_actions);

/// Sparse variant: at most two successors per (s,a) row; last state unreachable
/// when `with_unreachable` so policy pairs can disagree off-support.
Environment random_sparse_environment(std::mt19937_64& rng, int max_states, int max_actions,
                                      bool with_unreachable);

/// Deterministic transitions with a random (possibly spread) initial
/// distribution: with a deterministic policy the trajectory set is a small
/// collection of lassos.
Environment random_deterministic_environment(std::mt19937_64& rng, int max_states,
                                             int max_actions);

Policy random_policy(std::mt19937_64& rng, const Environment& env);

/// Policy with at most `max_support` actions positive per state.
Policy random_sparse_policy(std::mt19937_64& rng, const Environment& env, int max_support);

Policy random_deterministic_policy(std::mt19937_64& rng, const Environment& env);

RewardFunction random_reward(std::mt19937_64& rng, const Environment& env, double lo = -1.0,
                             double hi = 1.0);

} // namespace objspec
