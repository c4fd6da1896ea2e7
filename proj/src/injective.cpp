#include "objspec/injective.hpp"

#include <cmath>

namespace objspec {

InjectiveReturn build_injective_return(const Environment& env) {
    validate_environment(env);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    const std::size_t x = static_cast<std::size_t>(n) * a * n;
    InjectiveReturn inj;
    inj.alphabet_size = x;
    inj.gamma = 1.0 / (static_cast<double>(x) + 1.0);
    inj.reward = RewardFunction::zeros(n, a);
    double next = 0.0;
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++)
            for (int s2 = 0; s2 < n; s2++) inj.reward.at(s, ai, s2) = next++;
    return inj;
}

namespace {

struct Decoder {
    const Environment& env;
    const InjectiveReturn& inj;
    double gmax; ///< maximum possible return of any trajectory

    Decoder(const Environment& e, const InjectiveReturn& i)
        : env(e), inj(i), gmax(i.reward.max_abs() / (1.0 - i.gamma)) {}

    /// One digit: the unique transition x (from state `from`, or any state if
    /// from < 0) with residual - disc * R(x) inside [0, disc * gamma * gmax].
    Transition extract(double residual, double disc, int from) const {
        const int n = static_cast<int>(env.n_states());
        const int a = static_cast<int>(env.n_actions());
        const double tol = 1e-9;
        const double hi = disc * inj.gamma * gmax;
        bool found = false;
        Transition best{};
        for (int s = from < 0 ? 0 : from; s < (from < 0 ? n : from + 1); s++)
            for (int ai = 0; ai < a; ai++)
                for (int s2 = 0; s2 < n; s2++) {
                    if (env.trans(s, ai, s2) <= 0.0) continue;
                    const double r = residual - disc * inj.reward.at(s, ai, s2);
                    if (r >= -tol && r <= hi + tol) {
                        if (found)
                            throw NotDecodable("return decodes ambiguously");
                        found = true;
                        best = {s, ai, s2};
                    }
                }
        if (!found) throw NotDecodable("no transition interval contains the return");
        return best;
    }
};

} // namespace

std::vector<Transition> decode_return(double g, const Environment& env,
                                      const InjectiveReturn& inj, int depth) {
    const Decoder dec(env, inj);
    std::vector<Transition> out;
    double residual = g;
    double disc = 1.0;
    int from = -1;
    for (int k = 0; k < depth; k++) {
        const Transition x = dec.extract(residual, disc, from);
        out.push_back(x);
        residual -= disc * inj.reward.at(x.s, x.a, x.s2);
        disc *= inj.gamma;
        from = x.s2;
    }
    return out;
}

Lasso decode_return_lasso(double g, const Environment& env, const InjectiveReturn& inj,
                          int max_steps) {
    const Decoder dec(env, inj);
    std::vector<Transition> walk;
    std::vector<double> normalized; ///< residual rescaled to a fresh return at each position
    std::vector<int> state_at;      ///< source state per position
    double residual = g;
    double disc = 1.0;
    int from = -1;

    // Distinct future trajectories from the same state differ in normalized
    // residual by at least m - gamma*M/(1-gamma); far coarser than any noise
    // the short walks we decode can accumulate.
    const double match_tol = 1e-6;

    for (int k = 0; k < max_steps; k++) {
        const double norm = residual / disc;
        const int state = from;
        for (std::size_t j = 0; j < normalized.size(); j++) {
            if (state_at[j] == state && std::abs(normalized[j] - norm) <= match_tol) {
                Lasso lasso;
                lasso.stem.assign(walk.begin(), walk.begin() + j);
                lasso.cycle.assign(walk.begin() + j, walk.end());
                lasso.probability = 1.0;
                return lasso;
            }
        }
        normalized.push_back(norm);
        state_at.push_back(state);
        const Transition x = dec.extract(residual, disc, from);
        walk.push_back(x);
        residual -= disc * inj.reward.at(x.s, x.a, x.s2);
        disc *= inj.gamma;
        from = x.s2;
    }
    throw NotDecodable("no cycle detected within the step budget");
}

std::vector<RewardFunction> build_delta_reward_basis(const Environment& env) {
    validate_environment(env);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    std::vector<RewardFunction> basis;
    basis.reserve(static_cast<std::size_t>(n) * a * n);
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++)
            for (int s2 = 0; s2 < n; s2++) {
                RewardFunction r = RewardFunction::zeros(n, a);
                r.at(s, ai, s2) = 1.0;
                basis.push_back(std::move(r));
            }
    return basis;
}

} // namespace objspec
