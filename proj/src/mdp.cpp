#include "objspec/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace objspec {

int Environment::state_index(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); i++)
        if (states[i] == name) return static_cast<int>(i);
    throw ValidationError("unknown state name: " + std::string(name));
}

int Environment::action_index(std::string_view name) const {
    for (std::size_t i = 0; i < actions.size(); i++)
        if (actions[i] == name) return static_cast<int>(i);
    throw ValidationError("unknown action name: " + std::string(name));
}

RewardFunction RewardFunction::zeros(std::size_t n, std::size_t a) {
    RewardFunction r;
    r.values.assign(n, std::vector<std::vector<double>>(a, std::vector<double>(n, 0.0)));
    return r;
}

double RewardFunction::max_abs() const {
    double m = 0.0;
    for (const auto& bya : values)
        for (const auto& row : bya)
            for (double v : row) m = std::max(m, std::abs(v));
    return m;
}

namespace {

void check_distribution(const std::vector<double>& row, const std::string& label) {
    double sum = 0.0;
    for (double p : row) {
        if (!std::isfinite(p) || p < 0.0)
            throw ValidationError(label + ": entry " + std::to_string(p) + " is negative or non-finite");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTol)
        throw ValidationError(label + ": row sums to " + std::to_string(sum) + ", expected 1");
}

} // namespace

const Environment& validate_environment(const Environment& env) {
    const std::size_t n = env.n_states(), a = env.n_actions();
    if (n == 0) throw ValidationError("environment has no states");
    if (a == 0) throw ValidationError("environment has no actions");
    if (env.transition.size() != n)
        throw ValidationError("transition table has wrong first dimension");
    for (std::size_t s = 0; s < n; s++) {
        if (env.transition[s].size() != a)
            throw ValidationError("transition[" + env.states[s] + "] has wrong action dimension");
        for (std::size_t ai = 0; ai < a; ai++) {
            if (env.transition[s][ai].size() != n)
                throw ValidationError("transition[" + env.states[s] + "][" + env.actions[ai] +
                                      "] has wrong successor dimension");
            check_distribution(env.transition[s][ai],
                               "transition[" + env.states[s] + "][" + env.actions[ai] + "]");
        }
    }
    if (env.initial.size() != n) throw ValidationError("initial distribution has wrong size");
    check_distribution(env.initial, "initial");
    return env;
}

const Policy& validate_policy(const Environment& env, const Policy& policy) {
    if (policy.n_states() != env.n_states())
        throw DimensionMismatch("policy has " + std::to_string(policy.n_states()) +
                                " states, environment has " + std::to_string(env.n_states()));
    for (std::size_t s = 0; s < policy.n_states(); s++) {
        if (policy.action_probs[s].size() != env.n_actions())
            throw DimensionMismatch("policy row " + env.states[s] + " has wrong action dimension");
        check_distribution(policy.action_probs[s], "policy[" + env.states[s] + "]");
    }
    return policy;
}

InducedChain induced_chain(const Environment& env, const Policy& policy) {
    validate_policy(env, policy);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++) {
            const double p = policy.prob(s, ai);
            if (p == 0.0) continue;
            for (int s2 = 0; s2 < n; s2++) m(s, s2) += p * env.trans(s, ai, s2);
        }
    return InducedChain{std::move(m)};
}

Eigen::VectorXd discounted_visitation(const Environment& env, const Policy& policy,
                                      double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw ValidationError("gamma must lie in [0,1), got " + std::to_string(gamma));
    const InducedChain chain = induced_chain(env, policy);
    const int n = static_cast<int>(env.n_states());
    Eigen::VectorXd init(n);
    for (int s = 0; s < n; s++) init(s) = env.initial[s];
    // d = init + gamma P^T d  <=>  (I - gamma P^T) d = init
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) - gamma * chain.matrix.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
    if (!lu.isInvertible())
        throw SingularSystem("visitation system singular at gamma=" + std::to_string(gamma));
    return lu.solve(init);
}

namespace {

/// Tarjan strongly connected components of the positive-support graph.
struct Tarjan {
    const Eigen::MatrixXd& p;
    int n;
    std::vector<int> index, low, comp;
    std::vector<int> stack;
    std::vector<bool> on_stack;
    int counter = 0, n_comps = 0;

    explicit Tarjan(const Eigen::MatrixXd& mat)
        : p(mat), n(static_cast<int>(mat.rows())), index(n, -1), low(n, 0), comp(n, -1),
          on_stack(n, false) {}

    void run() {
        for (int v = 0; v < n; v++)
            if (index[v] < 0) strongconnect(v);
    }

    void strongconnect(int v0) {
        // iterative DFS to keep stack depth bounded
        struct Frame { int v; int next; };
        std::vector<Frame> frames{{v0, 0}};
        index[v0] = low[v0] = counter++;
        stack.push_back(v0);
        on_stack[v0] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.next < n) {
                int w = f.next++;
                if (p(f.v, w) <= 0.0) continue;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = n_comps;
                        if (w == f.v) break;
                    }
                    n_comps++;
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
};

Eigen::VectorXd stationary_of_class(const Eigen::MatrixXd& p, const std::vector<int>& cls) {
    const int k = static_cast<int>(cls.size());
    // sigma P_c = sigma, sum sigma = 1; replace the last equation with normalization.
    Eigen::MatrixXd lhs(k, k);
    for (int i = 0; i < k; i++)
        for (int j = 0; j < k; j++)
            lhs(i, j) = p(cls[j], cls[i]) - (i == j ? 1.0 : 0.0);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
    for (int j = 0; j < k; j++) lhs(k - 1, j) = 1.0;
    rhs(k - 1) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
    if (!lu.isInvertible()) throw SingularSystem("stationary distribution system singular");
    return lu.solve(rhs);
}

} // namespace

ChainDecomposition chain_decomposition(const InducedChain& chain) {
    const Eigen::MatrixXd& p = chain.matrix;
    const int n = static_cast<int>(p.rows());
    for (int s = 0; s < n; s++) {
        if (std::abs(p.row(s).sum() - 1.0) > 1e-9)
            throw ValidationError("chain row " + std::to_string(s) + " is not stochastic");
    }

    Tarjan tarjan(p);
    tarjan.run();

    // A component is recurrent iff no positive edge leaves it.
    std::vector<bool> leaves(tarjan.n_comps, false);
    for (int s = 0; s < n; s++)
        for (int s2 = 0; s2 < n; s2++)
            if (p(s, s2) > 0.0 && tarjan.comp[s] != tarjan.comp[s2]) leaves[tarjan.comp[s]] = true;

    ChainDecomposition out;
    std::vector<int> class_of(n, -1);
    std::vector<int> comp_to_class(tarjan.n_comps, -1);
    for (int c = 0; c < tarjan.n_comps; c++) {
        if (leaves[c]) continue;
        std::vector<int> members;
        for (int s = 0; s < n; s++)
            if (tarjan.comp[s] == c) members.push_back(s);
        comp_to_class[c] = static_cast<int>(out.classes.size());
        out.classes.push_back(std::move(members));
    }
    // deterministic order: classes sorted by smallest member
    std::sort(out.classes.begin(), out.classes.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    for (std::size_t ci = 0; ci < out.classes.size(); ci++)
        for (int s : out.classes[ci]) class_of[s] = static_cast<int>(ci);
    for (int s = 0; s < n; s++)
        if (class_of[s] < 0) out.transient.push_back(s);

    const int nc = static_cast<int>(out.classes.size());
    for (const auto& cls : out.classes) {
        Eigen::VectorXd sigma_local = stationary_of_class(p, cls);
        Eigen::VectorXd sigma = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < cls.size(); i++) sigma(cls[i]) = sigma_local(static_cast<int>(i));
        out.stationary.push_back(std::move(sigma));
    }

    // Absorption probabilities: recurrent states are absorbed into their own
    // class; transient ones solve (I - Q) X = B over the transient block.
    out.absorption = Eigen::MatrixXd::Zero(n, nc);
    for (int ci = 0; ci < nc; ci++)
        for (int s : out.classes[ci]) out.absorption(s, ci) = 1.0;
    const int nt = static_cast<int>(out.transient.size());
    if (nt > 0) {
        Eigen::MatrixXd q(nt, nt);
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(nt, nc);
        for (int i = 0; i < nt; i++) {
            for (int j = 0; j < nt; j++) q(i, j) = p(out.transient[i], out.transient[j]);
            for (int s2 = 0; s2 < n; s2++)
                if (class_of[s2] >= 0) b(i, class_of[s2]) += p(out.transient[i], s2);
        }
        Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(nt, nt) - q;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
        if (!lu.isInvertible()) throw SingularSystem("absorption system singular");
        Eigen::MatrixXd x = lu.solve(b);
        for (int i = 0; i < nt; i++) out.absorption.row(out.transient[i]) = x.row(i);
    }

    out.cesaro = Eigen::MatrixXd::Zero(n, n);
    for (int s = 0; s < n; s++)
        for (int ci = 0; ci < nc; ci++)
            out.cesaro.row(s) += out.absorption(s, ci) * out.stationary[ci].transpose();
    return out;
}

Eigen::VectorXd expected_reward_vector(const Environment& env, const Policy& policy,
                                       const RewardFunction& reward) {
    check_reward_shape(env, reward);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++) {
            const double pa = policy.prob(s, ai);
            if (pa == 0.0) continue;
            for (int s2 = 0; s2 < n; s2++)
                r(s) += pa * env.trans(s, ai, s2) * reward.at(s, ai, s2);
        }
    return r;
}

Policy deterministic_policy(const Environment& env, const std::vector<int>& action_per_state) {
    if (action_per_state.size() != env.n_states())
        throw DimensionMismatch("deterministic_policy: wrong state count");
    Policy pi;
    pi.action_probs.assign(env.n_states(), std::vector<double>(env.n_actions(), 0.0));
    for (std::size_t s = 0; s < env.n_states(); s++) {
        const int a = action_per_state[s];
        if (a < 0 || a >= static_cast<int>(env.n_actions()))
            throw DimensionMismatch("deterministic_policy: action index out of range");
        pi.action_probs[s][a] = 1.0;
    }
    return pi;
}

void check_reward_shape(const Environment& env, const RewardFunction& reward) {
    const std::size_t n = env.n_states(), a = env.n_actions();
    if (reward.values.size() != n)
        throw DimensionMismatch("reward has wrong state dimension");
    for (std::size_t s = 0; s < n; s++) {
        if (reward.values[s].size() != a)
            throw DimensionMismatch("reward has wrong action dimension");
        for (std::size_t ai = 0; ai < a; ai++) {
            if (reward.values[s][ai].size() != n)
                throw DimensionMismatch("reward has wrong successor dimension");
            for (double v : reward.values[s][ai])
                if (!std::isfinite(v)) throw ValidationError("reward entry is not finite");
        }
    }
}

} // namespace objspec
