#include "objspec/occupancy.hpp"

#include <cmath>

namespace objspec {

double OccupancyMeasure::total_mass() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
}

double OccupancyMeasure::sup_distance(const OccupancyMeasure& other) const {
    if (values.size() != other.values.size())
        throw DimensionMismatch("occupancy measures have different shapes");
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); i++)
        d = std::max(d, std::abs(values[i] - other.values[i]));
    return d;
}

OccupancyMeasure occupancy_measure(const Environment& env, const Policy& policy, double gamma) {
    const Eigen::VectorXd d = discounted_visitation(env, policy, gamma);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    OccupancyMeasure m;
    m.n = n;
    m.a = a;
    m.gamma = gamma;
    m.values.assign(static_cast<std::size_t>(n) * a * n, 0.0);
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++) {
            const double w = d(s) * policy.prob(s, ai);
            if (w == 0.0) continue;
            for (int s2 = 0; s2 < n; s2++) m.at(s, ai, s2) = w * env.trans(s, ai, s2);
        }
    return m;
}

double eval_mr(const Environment& env, const Policy& policy, const RewardFunction& reward,
               double gamma) {
    check_reward_shape(env, reward);
    const OccupancyMeasure m = occupancy_measure(env, policy, gamma);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    double j = 0.0;
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++)
            for (int s2 = 0; s2 < n; s2++) {
                const double mass = m.at(s, ai, s2);
                if (mass != 0.0) j += mass * reward.at(s, ai, s2);
            }
    return j;
}

double eval_lar(const Environment& env, const Policy& policy, const RewardFunction& reward) {
    const InducedChain chain = induced_chain(env, policy);
    const ChainDecomposition dec = chain_decomposition(chain);
    const Eigen::VectorXd r = expected_reward_vector(env, policy, reward);
    const int n = static_cast<int>(env.n_states());
    Eigen::VectorXd init(n);
    for (int s = 0; s < n; s++) init(s) = env.initial[s];
    return init.transpose() * dec.cesaro * r;
}

std::vector<double> average_transition_frequency(const Environment& env, const Policy& policy) {
    const InducedChain chain = induced_chain(env, policy);
    const ChainDecomposition dec = chain_decomposition(chain);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    Eigen::VectorXd init(n);
    for (int s = 0; s < n; s++) init(s) = env.initial[s];
    const Eigen::VectorXd weight = dec.cesaro.transpose() * init; // long-run state frequencies
    std::vector<double> freq(static_cast<std::size_t>(n) * a * n, 0.0);
    for (int s = 0; s < n; s++) {
        if (weight(s) == 0.0) continue;
        for (int ai = 0; ai < a; ai++) {
            const double w = weight(s) * policy.prob(s, ai);
            if (w == 0.0) continue;
            for (int s2 = 0; s2 < n; s2++)
                freq[(static_cast<std::size_t>(s) * a + ai) * n + s2] = w * env.trans(s, ai, s2);
        }
    }
    return freq;
}

LotteryCertificate lottery_certificate(const Environment& env, const Policy& policy,
                                       double gamma) {
    return LotteryCertificate{occupancy_measure(env, policy, gamma)};
}

Policy policy_from_certificate(const Environment& env, const LotteryCertificate& cert) {
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    const OccupancyMeasure& m = cert.occupancy;
    if (static_cast<int>(m.n) != n || static_cast<int>(m.a) != a)
        throw DimensionMismatch("certificate does not match environment shape");
    Policy pi;
    pi.action_probs.assign(n, std::vector<double>(a, 0.0));
    for (int s = 0; s < n; s++) {
        double dmass = 0.0;
        std::vector<double> per_action(a, 0.0);
        for (int ai = 0; ai < a; ai++)
            for (int s2 = 0; s2 < n; s2++) {
                per_action[ai] += m.at(s, ai, s2);
                dmass += m.at(s, ai, s2);
            }
        if (dmass > 1e-12) {
            for (int ai = 0; ai < a; ai++) pi.action_probs[s][ai] = per_action[ai] / dmass;
            // renormalize against accumulated rounding
            double sum = 0.0;
            for (double v : pi.action_probs[s]) sum += v;
            for (double& v : pi.action_probs[s]) v /= sum;
        } else {
            for (int ai = 0; ai < a; ai++) pi.action_probs[s][ai] = 1.0 / a;
        }
    }
    return pi;
}

bool lottery_equal(const Environment& env, const Policy& pi1, const Policy& pi2, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ValidationError("lottery_equal requires gamma in (0,1)");
    const OccupancyMeasure m1 = occupancy_measure(env, pi1, gamma);
    const OccupancyMeasure m2 = occupancy_measure(env, pi2, gamma);
    return m1.sup_distance(m2) <= 1e-9;
}

} // namespace objspec
