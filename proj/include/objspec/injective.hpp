#pragma once

#include "objspec/mdp.hpp"
#include "objspec/trajectory.hpp"

#include <vector>

namespace objspec {

/**
 * Reward spacing and discount bound that make the discounted return function
 * one-to-one on trajectories: rewards {0, 1, ..., |X|-1} assigned injectively
 * over all transition triples X = S x A x S in declaration order, and
 * gamma = 1 / (|X| + 1), strictly inside the m(1 - gamma) > gamma*M bound.
 */
struct InjectiveReturn {
    RewardFunction reward;
    double gamma;
    std::size_t alphabet_size; ///< |X| = n * a * n
};

InjectiveReturn build_injective_return(const Environment& env);

/**
 * Inverts the return digit by digit: at each step the unique transition whose
 * residual stays inside [0, gamma * Rmax / (1 - gamma)] is the next one taken.
 * Throws NotDecodable when no transition fits within 1e-9.
 */
std::vector<Transition> decode_return(double g, const Environment& env,
                                      const InjectiveReturn& inj, int depth);

/**
 * Decodes a return produced by an eventually-periodic trajectory back into
 * its lasso by running the digit extraction until the (state, residual) pair
 * repeats.
 */
Lasso decode_return_lasso(double g, const Environment& env, const InjectiveReturn& inj,
                          int max_steps = 64);

/**
 * The |S||A||S| indicator reward functions, one per transition triple in
 * declaration order; the policy-evaluation vector under this basis equals
 * the occupancy measure entrywise.
 */
std::vector<RewardFunction> build_delta_reward_basis(const Environment& env);

} // namespace objspec
