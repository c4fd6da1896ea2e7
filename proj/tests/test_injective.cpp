#include "objspec/evaluate.hpp"
#include "objspec/injective.hpp"
#include "objspec/random_gen.hpp"
#include "objspec/separations.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace objspec;

namespace {

Environment chain_env_two_states() {
    // two states, one action, deterministic swap: |X| = 4
    Environment env;
    env.states = {"s0", "s1"};
    env.actions = {"a0"};
    env.transition = {{{0.0, 1.0}}, {{1.0, 0.0}}};
    env.initial = {1.0, 0.0};
    return env;
}

std::vector<Transition> unroll(const Lasso& lasso, int depth) {
    std::vector<Transition> out;
    for (const Transition& x : lasso.stem) {
        if (static_cast<int>(out.size()) == depth) return out;
        out.push_back(x);
    }
    while (static_cast<int>(out.size()) < depth)
        out.push_back(lasso.cycle[(out.size() - lasso.stem.size()) % lasso.cycle.size()]);
    return out;
}

} // namespace

TEST_CASE("the |X|=4 construction pins gamma to 1/5 and rewards to 0..3") {
    const InjectiveReturn inj = build_injective_return(chain_env_two_states());
    CHECK(inj.alphabet_size == 4);
    CHECK(inj.gamma == doctest::Approx(0.2).epsilon(1e-15));
    std::vector<double> seen;
    for (const auto& by_a : inj.reward.values)
        for (const auto& row : by_a)
            for (double v : row) seen.push_back(v);
    std::sort(seen.begin(), seen.end());
    CHECK(seen == std::vector<double>{0.0, 1.0, 2.0, 3.0});
}

TEST_CASE("a single-transition alphabet is vacuously injective with gamma 1/2") {
    Environment env;
    env.states = {"s0"};
    env.actions = {"a0"};
    env.transition = {{{1.0}}};
    env.initial = {1.0};
    const InjectiveReturn inj = build_injective_return(env);
    CHECK(inj.alphabet_size == 1);
    CHECK(inj.gamma == doctest::Approx(0.5));
}

TEST_CASE("depth-12 prefix return intervals stay separated on small alphabets") {
    // interval-separation sweep via per-level dynamic programming: sibling
    // subtrees at depth k must be at least gamma^k * (m(1-gamma) - gamma*M)
    // apart, the scaled form of the spacing bound
    const SeparationFixture& f = fixture("ex_single_state");
    const Environment& env = f.env;
    const InjectiveReturn inj = build_injective_return(env);
    const int depth = 12;
    const double m = 1.0, big_m = static_cast<double>(inj.alphabet_size - 1);
    const double min_gap = m * (1.0 - inj.gamma) - inj.gamma * big_m;
    REQUIRE(min_gap > 0.0);
    const double tail = std::pow(inj.gamma, depth) * big_m / (1.0 - inj.gamma);

    const int n = static_cast<int>(env.n_states());
    // min and max achievable return from each state over the remaining depth
    std::vector<std::vector<double>> lo(depth + 1, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> hi(depth + 1, std::vector<double>(n, 0.0));
    for (int d = 1; d <= depth; d++)
        for (int s = 0; s < n; s++) {
            double best = -1e300, worst = 1e300;
            for (std::size_t a = 0; a < env.n_actions(); a++)
                for (int s2 = 0; s2 < n; s2++) {
                    if (env.trans(s, static_cast<int>(a), s2) <= 0.0) continue;
                    const double r = inj.reward.at(s, static_cast<int>(a), s2);
                    best = std::max(best, r + inj.gamma * hi[d - 1][s2]);
                    worst = std::min(worst, r + inj.gamma * lo[d - 1][s2]);
                }
            hi[d][s] = best;
            lo[d][s] = worst;
        }
    // at every node, sibling child intervals must not approach each other
    for (int d = depth; d >= 1; d--) {
        const double level_gap = std::pow(inj.gamma, static_cast<double>(depth - d)) * min_gap;
        for (int s = 0; s < n; s++) {
            std::vector<std::pair<double, double>> intervals;
            for (std::size_t a = 0; a < env.n_actions(); a++)
                for (int s2 = 0; s2 < n; s2++) {
                    if (env.trans(s, static_cast<int>(a), s2) <= 0.0) continue;
                    const double r = inj.reward.at(s, static_cast<int>(a), s2);
                    intervals.emplace_back(r + inj.gamma * lo[d - 1][s2],
                                           r + inj.gamma * hi[d - 1][s2] + tail);
                }
            std::sort(intervals.begin(), intervals.end());
            for (std::size_t k = 1; k < intervals.size(); k++)
                CHECK(intervals[k].first - intervals[k - 1].second >= level_gap * 0.99 - tail);
        }
    }
}

TEST_CASE("a self-looping transition decodes to the constant prefix") {
    Environment env;
    env.states = {"s0"};
    env.actions = {"a0", "a1"};
    env.transition = {{{1.0}, {1.0}}};
    env.initial = {1.0};
    const InjectiveReturn inj = build_injective_return(env);
    const double g = inj.reward.at(0, 1, 0) / (1.0 - inj.gamma);
    const std::vector<Transition> prefix = decode_return(g, env, inj, 6);
    for (const Transition& x : prefix) {
        CHECK(x.a == 1);
        CHECK(x.s == 0);
    }
}

TEST_CASE("decoding rejects a non-realizable return") {
    const Environment env = chain_env_two_states();
    const InjectiveReturn inj = build_injective_return(env);
    CHECK_THROWS_AS(decode_return(1e6, env, inj, 4), NotDecodable);
}

TEST_CASE("round trip: every fixture lasso decodes back to its own prefix") {
    std::mt19937_64 rng(51);
    int round_trips = 0;
    for (int rep = 0; rep < 25; rep++) {
        const Environment env = random_deterministic_environment(rng, 3, 2);
        const Policy pi = random_deterministic_policy(rng, env);
        const InjectiveReturn inj = build_injective_return(env);
        for (const Lasso& lasso : enumerate_lassos(env, pi)) {
            const double g = lasso_return(lasso, inj.reward, inj.gamma);
            const int depth =
                static_cast<int>(lasso.stem.size() + 2 * lasso.cycle.size());
            const std::vector<Transition> decoded = decode_return(g, env, inj, depth);
            CHECK(decoded == unroll(lasso, depth));
            const Lasso relasso = decode_return_lasso(g, env, inj);
            CHECK(unroll(relasso, depth) == unroll(lasso, depth));
            round_trips++;
        }
    }
    CHECK(round_trips >= 25);
}

TEST_CASE("the delta basis evaluation vector is the occupancy measure") {
    std::mt19937_64 rng(52);
    const Environment env = random_environment(rng, 3, 2);
    const std::vector<RewardFunction> basis = build_delta_reward_basis(env);
    for (int rep = 0; rep < 20; rep++) {
        const Policy pi = random_policy(rng, env);
        const double gamma = 0.9;
        const std::vector<double> j = policy_eval_vector(env, pi, basis, gamma);
        const OccupancyMeasure m = occupancy_measure(env, pi, gamma);
        REQUIRE(j.size() == m.values.size());
        double total = 0.0;
        for (std::size_t k = 0; k < j.size(); k++) {
            CHECK(std::abs(j[k] - m.values[k]) <= 1e-9);
            total += j[k];
        }
        CHECK(total == doctest::Approx(1.0 / (1.0 - gamma)).epsilon(1e-9));
    }
}

TEST_CASE("the one-transition basis evaluates to 1/(1-gamma)") {
    Environment env;
    env.states = {"s0"};
    env.actions = {"a0"};
    env.transition = {{{1.0}}};
    env.initial = {1.0};
    const std::vector<RewardFunction> basis = build_delta_reward_basis(env);
    REQUIRE(basis.size() == 1);
    Policy pi;
    pi.action_probs = {{1.0}};
    CHECK(eval_mr(env, pi, basis[0], 0.75) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("the separation sweep also holds on the |X|=4 swap chain") {
    const Environment env = chain_env_two_states();
    const InjectiveReturn inj = build_injective_return(env);
    REQUIRE(inj.alphabet_size == 4);
    const int depth = 12;
    const double big_m = 3.0;
    const double min_gap = (1.0 - inj.gamma) - inj.gamma * big_m;
    REQUIRE(min_gap > 0.0);
    // realizable transitions all decode uniquely along the swap structure
    std::mt19937_64 rng(53);
    const Policy pi = random_deterministic_policy(rng, env);
    for (const Lasso& lasso : enumerate_lassos(env, pi)) {
        const double g = lasso_return(lasso, inj.reward, inj.gamma);
        const std::vector<Transition> decoded = decode_return(g, env, inj, depth);
        CHECK(decoded == unroll(lasso, depth));
    }
}
