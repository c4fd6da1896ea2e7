#include "objspec/random_gen.hpp"

#include <algorithm>

namespace objspec {

namespace {

std::vector<double> random_distribution(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> v(n);
    double sum = 0.0;
    for (double& x : v) {
        x = unif(rng);
        sum += x;
    }
    for (double& x : v) x /= sum;
    // renormalize exactly against rounding
    double total = 0.0;
    for (double x : v) total += x;
    v.back() += 1.0 - total;
    return v;
}

std::vector<std::string> numbered(const std::string& prefix, int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; i++) out.push_back(prefix + std::to_string(i));
    return out;
}

} // namespace

Environment random_environment(std::mt19937_64& rng, int max_states, int max_actions) {
    std::uniform_int_distribution<int> ns(1, max_states), na(1, max_actions);
    const int n = ns(rng), a = na(rng);
    Environment env;
    env.states = numbered("s", n);
    env.actions = numbered("a", a);
    env.transition.assign(n, std::vector<std::vector<double>>(a));
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++) env.transition[s][ai] = random_distribution(rng, n);
    env.initial = random_distribution(rng, n);
    return validate_environment(env), env;
}

Environment random_sparse_environment(std::mt19937_64& rng, int max_states, int max_actions,
                                      bool with_unreachable) {
    std::uniform_int_distribution<int> ns(2, max_states), na(1, max_actions);
    const int n = ns(rng), a = na(rng);
    const int reachable = with_unreachable ? n - 1 : n;
    Environment env;
    env.states = numbered("s", n);
    env.actions = numbered("a", a);
    env.transition.assign(n, std::vector<std::vector<double>>(a, std::vector<double>(n, 0.0)));
    std::uniform_int_distribution<int> pick(0, std::max(0, reachable - 1));
    std::uniform_real_distribution<double> unif(0.2, 0.8);
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++) {
            const int t1 = pick(rng);
            int t2 = pick(rng);
            if (t1 == t2) {
                env.transition[s][ai][t1] = 1.0;
            } else {
                const double p = unif(rng);
                env.transition[s][ai][t1] = p;
                env.transition[s][ai][t2] = 1.0 - p;
            }
        }
    env.initial.assign(n, 0.0);
    if (reachable == 1) {
        env.initial[0] = 1.0;
    } else {
        const double p = unif(rng);
        env.initial[0] = p;
        env.initial[1] = 1.0 - p;
    }
    return validate_environment(env), env;
}

Environment random_deterministic_environment(std::mt19937_64& rng, int max_states,
                                             int max_actions) {
    std::uniform_int_distribution<int> ns(1, max_states), na(1, max_actions);
    const int n = ns(rng), a = na(rng);
    Environment env;
    env.states = numbered("s", n);
    env.actions = numbered("a", a);
    env.transition.assign(n, std::vector<std::vector<double>>(a, std::vector<double>(n, 0.0)));
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++) env.transition[s][ai][pick(rng)] = 1.0;
    env.initial = random_distribution(rng, n);
    return validate_environment(env), env;
}

Policy random_policy(std::mt19937_64& rng, const Environment& env) {
    Policy pi;
    for (std::size_t s = 0; s < env.n_states(); s++)
        pi.action_probs.push_back(random_distribution(rng, static_cast<int>(env.n_actions())));
    return validate_policy(env, pi), pi;
}

Policy random_sparse_policy(std::mt19937_64& rng, const Environment& env, int max_support) {
    const int a = static_cast<int>(env.n_actions());
    const int support = std::min(a, max_support);
    Policy pi;
    pi.action_probs.assign(env.n_states(), std::vector<double>(a, 0.0));
    std::uniform_int_distribution<int> pick(0, a - 1);
    for (std::size_t s = 0; s < env.n_states(); s++) {
        std::vector<int> chosen;
        while (static_cast<int>(chosen.size()) < support) {
            const int c = pick(rng);
            if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
        }
        const std::vector<double> mass = random_distribution(rng, support);
        for (int k = 0; k < support; k++) pi.action_probs[s][chosen[k]] = mass[k];
    }
    return validate_policy(env, pi), pi;
}

Policy random_deterministic_policy(std::mt19937_64& rng, const Environment& env) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(env.n_actions()) - 1);
    std::vector<int> choice;
    for (std::size_t s = 0; s < env.n_states(); s++) choice.push_back(pick(rng));
    return deterministic_policy(env, choice);
}

RewardFunction random_reward(std::mt19937_64& rng, const Environment& env, double lo,
                             double hi) {
    std::uniform_real_distribution<double> unif(lo, hi);
    RewardFunction r = RewardFunction::zeros(env.n_states(), env.n_actions());
    for (auto& by_a : r.values)
        for (auto& row : by_a)
            for (double& v : row) v = unif(rng);
    return r;
}

} // namespace objspec
