#pragma once

#include "objspec/mdp.hpp"

#include <vector>

namespace objspec {

/**
 * Discounted transition-visitation measure
 *   m[s,a,s'] = sum_t gamma^t P[s_t=s, a_t=a, s_{t+1}=s'],
 * the canonical invariant of a stationary policy. Total mass is 1/(1-gamma).
 */
struct OccupancyMeasure {
    std::size_t n = 0, a = 0;
    std::vector<double> values; ///< flattened [s][a][s']
    double gamma = 0.0;

    double at(int s, int ai, int s2) const { return values[(s * a + ai) * n + s2]; }
    double& at(int s, int ai, int s2) { return values[(s * a + ai) * n + s2]; }
    double total_mass() const;
    double sup_distance(const OccupancyMeasure& other) const;
};

OccupancyMeasure occupancy_measure(const Environment& env, const Policy& policy, double gamma);

/// <m(pi), R>, the exact discounted return.
double eval_mr(const Environment& env, const Policy& policy, const RewardFunction& reward,
               double gamma);

/// Exact limit-average reward via the Cesaro limit matrix.
double eval_lar(const Environment& env, const Policy& policy, const RewardFunction& reward);

/**
 * Long-run average transition frequency initial^T P*-weighted:
 *   freq[s,a,s'] = sum_{s0} I(s0) P*(s0,s) pi(a|s) T(s,a,s').
 * J_LAR is the dot product of this vector with any reward function.
 */
std::vector<double> average_transition_frequency(const Environment& env, const Policy& policy);

/**
 * Canonical finite certificate of a trajectory lottery. Two stationary
 * policies generate the same lottery exactly when their occupancy measures
 * agree, so the measure is the stored representation.
 */
struct LotteryCertificate {
    OccupancyMeasure occupancy;
};

LotteryCertificate lottery_certificate(const Environment& env, const Policy& policy,
                                       double gamma);

/**
 * Recovers a canonical policy generating the certificate's lottery:
 * action probabilities proportional to occupancy mass on visited states,
 * uniform on unvisited ones.
 */
Policy policy_from_certificate(const Environment& env, const LotteryCertificate& cert);

/// True iff occupancy measures agree within 1e-9 sup-norm.
bool lottery_equal(const Environment& env, const Policy& pi1, const Policy& pi2, double gamma);

} // namespace objspec
