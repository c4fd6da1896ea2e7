#include "objspec/evaluate.hpp"

#include <map>

namespace objspec {

namespace {

void check_machine(const Environment& env, const RewardMachine& machine) {
    const std::size_t nu = machine.n_machine_states();
    const std::size_t n = env.n_states(), a = env.n_actions();
    if (nu == 0) throw ValidationError("reward machine has no states");
    if (machine.start < 0 || machine.start >= static_cast<int>(nu))
        throw ValidationError("reward machine start state out of range");
    if (machine.delta_u.size() != nu) throw DimensionMismatch("delta_u has wrong machine dimension");
    for (const auto& by_s : machine.delta_u) {
        if (by_s.size() != n) throw DimensionMismatch("delta_u has wrong state dimension");
        for (const auto& by_a : by_s) {
            if (by_a.size() != a) throw DimensionMismatch("delta_u has wrong action dimension");
            for (const auto& by_s2 : by_a) {
                if (by_s2.size() != n)
                    throw DimensionMismatch("delta_u has wrong successor dimension");
                for (int u2 : by_s2)
                    if (u2 < 0 || u2 >= static_cast<int>(nu))
                        throw ValidationError("delta_u target out of range");
            }
        }
    }
    if (machine.delta_r.size() != nu) throw DimensionMismatch("delta_r has wrong dimension");
    for (const auto& row : machine.delta_r) {
        if (row.size() != nu) throw DimensionMismatch("delta_r has wrong dimension");
        for (const auto& r : row) check_reward_shape(env, r);
    }
    if (!(machine.gamma >= 0.0 && machine.gamma < 1.0))
        throw ValidationError("reward machine gamma must lie in [0,1)");
}

} // namespace

RmProduct compile_rm_product(const Environment& env, const RewardMachine& machine) {
    validate_environment(env);
    check_machine(env, machine);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());

    // reachable product states under any action support
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int s, int u) {
        auto [it, inserted] = ids.emplace(std::make_pair(s, u), static_cast<int>(pairs.size()));
        if (inserted) pairs.emplace_back(s, u);
        return it->second;
    };
    for (int s = 0; s < n; s++)
        if (env.initial[s] > 0.0) intern(s, machine.start);
    for (std::size_t cur = 0; cur < pairs.size(); cur++) {
        const auto [s, u] = pairs[cur];
        for (int ai = 0; ai < a; ai++)
            for (int s2 = 0; s2 < n; s2++)
                if (env.trans(s, ai, s2) > 0.0) intern(s2, machine.step(u, s, ai, s2));
    }

    const int np = static_cast<int>(pairs.size());
    RmProduct product;
    product.pairs = pairs;
    product.env.states.reserve(np);
    for (const auto& [s, u] : pairs)
        product.env.states.push_back(env.states[s] + "@" + machine.machine_states[u]);
    product.env.actions = env.actions;
    product.env.transition.assign(np, std::vector<std::vector<double>>(
                                          a, std::vector<double>(np, 0.0)));
    product.env.initial.assign(np, 0.0);
    product.reward = RewardFunction::zeros(np, a);

    for (int i = 0; i < np; i++) {
        const auto [s, u] = pairs[i];
        for (int ai = 0; ai < a; ai++) {
            double mass = 0.0;
            for (int s2 = 0; s2 < n; s2++) {
                const double p = env.trans(s, ai, s2);
                if (p <= 0.0) continue;
                const int u2 = machine.step(u, s, ai, s2);
                const auto it = ids.find({s2, u2});
                const int j = it->second;
                product.env.transition[i][ai][j] += p;
                product.reward.at(i, ai, j) = machine.delta_r[u][u2].at(s, ai, s2);
                mass += p;
            }
            // rows must stay stochastic even where the environment puts all
            // mass on unreachable successors (cannot happen by construction,
            // but keep the invariant explicit)
            if (mass < 1.0 - kProbTol) {
                product.env.transition[i][ai][i] += 1.0 - mass;
            }
        }
    }
    for (int s = 0; s < n; s++)
        if (env.initial[s] > 0.0) product.env.initial[ids.at({s, machine.start})] = env.initial[s];

    validate_environment(product.env);
    return product;
}

Policy lift_policy(const RmProduct& product, const Policy& policy) {
    Policy lifted;
    lifted.action_probs.reserve(product.pairs.size());
    for (const auto& [s, u] : product.pairs) lifted.action_probs.push_back(policy.action_probs[s]);
    return lifted;
}

double eval_rm(const Environment& env, const Policy& policy, const RewardMachine& machine) {
    validate_policy(env, policy);
    const RmProduct product = compile_rm_product(env, machine);
    return eval_mr(product.env, lift_policy(product, policy), product.reward, machine.gamma);
}

} // namespace objspec
