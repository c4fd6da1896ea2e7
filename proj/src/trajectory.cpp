#include "objspec/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace objspec {

double PrefixDistribution::total() const {
    double sum = 0.0;
    for (const auto& [_, p] : probs) sum += p;
    return sum;
}

PrefixDistribution PrefixDistribution::marginalize(int new_depth) const {
    if (new_depth > depth)
        throw DimensionMismatch("cannot marginalize to a deeper distribution");
    PrefixDistribution out;
    out.depth = new_depth;
    for (const auto& [prefix, p] : probs) {
        TrajectoryPrefix shorter{prefix.start,
                                 {prefix.steps.begin(), prefix.steps.begin() + new_depth}};
        out.probs[shorter] += p;
    }
    return out;
}

double PrefixDistribution::total_variation(const PrefixDistribution& other) const {
    if (depth != other.depth)
        throw DimensionMismatch("prefix distributions have different depths");
    double tv = 0.0;
    auto it1 = probs.begin();
    auto it2 = other.probs.begin();
    while (it1 != probs.end() || it2 != other.probs.end()) {
        if (it2 == other.probs.end() || (it1 != probs.end() && it1->first < it2->first)) {
            tv += std::abs(it1->second);
            ++it1;
        } else if (it1 == probs.end() || it2->first < it1->first) {
            tv += std::abs(it2->second);
            ++it2;
        } else {
            tv += std::abs(it1->second - it2->second);
            ++it1;
            ++it2;
        }
    }
    return tv / 2.0;
}

PrefixDistribution prefix_distribution(const Environment& env, const Policy& policy, int depth,
                                       std::size_t cap) {
    if (depth < 0) throw ValidationError("prefix depth must be nonnegative");
    validate_policy(env, policy);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());

    PrefixDistribution out;
    out.depth = depth;
    struct Item {
        TrajectoryPrefix prefix;
        double prob;
    };
    std::vector<Item> frontier;
    for (int s = 0; s < n; s++)
        if (env.initial[s] > 0.0) frontier.push_back({TrajectoryPrefix{s, {}}, env.initial[s]});

    for (int level = 0; level < depth; level++) {
        std::vector<Item> next;
        for (const auto& item : frontier) {
            const int s = item.prefix.steps.empty() ? item.prefix.start
                                                    : item.prefix.steps.back().s2;
            for (int ai = 0; ai < a; ai++) {
                const double pa = policy.prob(s, ai);
                if (pa == 0.0) continue;
                for (int s2 = 0; s2 < n; s2++) {
                    const double pt = env.trans(s, ai, s2);
                    if (pt == 0.0) continue;
                    Item child{item.prefix, item.prob * pa * pt};
                    child.prefix.steps.push_back({s, ai, s2});
                    next.push_back(std::move(child));
                    if (next.size() > cap)
                        throw ExplosionGuard("prefix enumeration exceeds cap of " +
                                             std::to_string(cap));
                }
            }
        }
        frontier = std::move(next);
    }
    for (auto& item : frontier) out.probs[std::move(item.prefix)] += item.prob;
    return out;
}

double lasso_return(const Lasso& lasso, const RewardFunction& reward, double gamma) {
    double g = 0.0;
    double disc = 1.0;
    for (const Transition& x : lasso.stem) {
        g += disc * reward.at(x.s, x.a, x.s2);
        disc *= gamma;
    }
    double cycle_sum = 0.0;
    double cdisc = 1.0;
    for (const Transition& x : lasso.cycle) {
        cycle_sum += cdisc * reward.at(x.s, x.a, x.s2);
        cdisc *= gamma;
    }
    const double denom = 1.0 - std::pow(gamma, static_cast<double>(lasso.cycle.size()));
    return g + disc * cycle_sum / denom;
}

double lasso_average_reward(const Lasso& lasso, const RewardFunction& reward) {
    double sum = 0.0;
    for (const Transition& x : lasso.cycle) sum += reward.at(x.s, x.a, x.s2);
    return sum / static_cast<double>(lasso.cycle.size());
}

namespace {

struct SupportGraph {
    // per state: the positive-probability transitions out of it
    std::vector<std::vector<std::pair<Transition, double>>> out;
};

SupportGraph support_graph(const Environment& env, const Policy& policy) {
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    SupportGraph g;
    g.out.resize(n);
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++) {
            const double pa = policy.prob(s, ai);
            if (pa == 0.0) continue;
            for (int s2 = 0; s2 < n; s2++) {
                const double p = pa * env.trans(s, ai, s2);
                if (p > 0.0) g.out[s].push_back({{s, ai, s2}, p});
            }
        }
    return g;
}

// States lying on a support cycle or reachable from one.
std::vector<bool> cycle_closure(const SupportGraph& g) {
    const int n = static_cast<int>(g.out.size());
    // a state is cyclic if it can reach itself through >= 1 transition
    std::vector<bool> cyclic(n, false);
    for (int s = 0; s < n; s++) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack;
        for (const auto& [x, _] : g.out[s])
            if (!seen[x.s2]) {
                seen[x.s2] = true;
                stack.push_back(x.s2);
            }
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (v == s) break;
            for (const auto& [x, _] : g.out[v])
                if (!seen[x.s2]) {
                    seen[x.s2] = true;
                    stack.push_back(x.s2);
                }
        }
        cyclic[s] = seen[s];
    }
    // forward closure
    std::vector<bool> closed = cyclic;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < n; s++) {
            if (!closed[s]) continue;
            for (const auto& [x, _] : g.out[s])
                if (!closed[x.s2]) {
                    closed[x.s2] = true;
                    changed = true;
                }
        }
    }
    return closed;
}

} // namespace

std::vector<Lasso> enumerate_lassos(const Environment& env, const Policy& policy) {
    validate_policy(env, policy);
    const SupportGraph g = support_graph(env, policy);
    const std::vector<bool> forced = cycle_closure(g);
    const int n = static_cast<int>(env.n_states());
    for (int s = 0; s < n; s++)
        if (forced[s] && g.out[s].size() != 1)
            throw NotLassoEnumerable("support graph branches at state " + env.states[s] +
                                     " inside or after a cycle");

    std::vector<Lasso> lassos;
    // Walk the forced tail: from a forced state the trajectory is determined.
    auto follow = [&](int s, std::vector<Transition> stem, double prob) {
        std::vector<int> pos_of(n, -1);
        std::vector<Transition> walk;
        int cur = s;
        while (pos_of[cur] < 0) {
            pos_of[cur] = static_cast<int>(walk.size());
            const Transition x = g.out[cur][0].first;
            walk.push_back(x);
            cur = x.s2;
        }
        const int split = pos_of[cur];
        Lasso lasso;
        lasso.stem = std::move(stem);
        lasso.stem.insert(lasso.stem.end(), walk.begin(), walk.begin() + split);
        lasso.cycle.assign(walk.begin() + split, walk.end());
        lasso.probability = prob;
        lassos.push_back(std::move(lasso));
    };

    // Branch through the acyclic part.
    struct Item {
        int s;
        std::vector<Transition> stem;
        double prob;
    };
    std::vector<Item> stack;
    for (int s = 0; s < n; s++)
        if (env.initial[s] > 0.0) stack.push_back({s, {}, env.initial[s]});
    while (!stack.empty()) {
        Item item = std::move(stack.back());
        stack.pop_back();
        if (forced[item.s]) {
            follow(item.s, std::move(item.stem), item.prob);
            continue;
        }
        for (const auto& [x, p] : g.out[item.s]) {
            Item child{x.s2, item.stem, item.prob * p};
            child.stem.push_back(x);
            stack.push_back(std::move(child));
        }
    }
    // deterministic order for reproducible reports
    std::sort(lassos.begin(), lassos.end(), [](const Lasso& a, const Lasso& b) {
        return std::tie(a.stem, a.cycle) < std::tie(b.stem, b.cycle);
    });
    return lassos;
}

std::vector<std::pair<Lasso, double>> enumerate_lassos(const Environment& env,
                                                       const Policy& policy,
                                                       const RewardFunction& reward,
                                                       double gamma) {
    std::vector<std::pair<Lasso, double>> out;
    for (Lasso& lasso : enumerate_lassos(env, policy)) {
        const double g = lasso_return(lasso, reward, gamma);
        out.emplace_back(std::move(lasso), g);
    }
    return out;
}

TrajectoryView view_of(const Lasso& lasso) {
    const int start = lasso.stem.empty() ? lasso.cycle.front().s : lasso.stem.front().s;
    return TrajectoryView{start, lasso.stem, lasso.cycle};
}

} // namespace objspec
