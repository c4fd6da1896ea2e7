#include "objspec/builtins.hpp"
#include "objspec/embed.hpp"
#include "objspec/hasse.hpp"
#include "objspec/random_gen.hpp"
#include "objspec/separations.hpp"
#include "objspec/trajectory.hpp"

#include <doctest.h>

#include <random>

using namespace objspec;

TEST_CASE("mr embeds into a one-state reward machine exactly") {
    std::mt19937_64 rng(61);
    const Environment env = random_environment(rng, 4, 3);
    const MrSpec mr{random_reward(rng, env), 0.85};
    const ObjectiveSpec rm = embed(ObjectiveSpec{mr}, Formalism::RM, env);
    for (int rep = 0; rep < 20; rep++) {
        const Policy pi = random_policy(rng, env);
        CHECK(evaluate(env, pi, rm) ==
              doctest::Approx(eval_mr(env, pi, mr.reward, mr.gamma)).epsilon(1e-12));
    }
}

TEST_CASE("the xor machine embeds into a trajectory value preserving its levels") {
    const SeparationFixture& f = fixture("ex_xor");
    const ObjectiveSpec ftr = embed(f.spec("rm_xor"), Formalism::FTR, f.env);
    CHECK(evaluate(f.env, f.policy("pi_AB"), ftr) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(evaluate(f.env, f.policy("pi_BA"), ftr) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(evaluate(f.env, f.policy("pi_AA"), ftr) == doctest::Approx(0.0));
    CHECK(evaluate(f.env, f.policy("pi_BB"), ftr) == doctest::Approx(0.0));
}

TEST_CASE("unsupported conversions are refused") {
    const SeparationFixture& f = fixture("ex_two_paths");
    CHECK_THROWS_AS(embed(f.spec("mr_upper"), Formalism::LAR, f.env), UnsupportedEdge);
    CHECK_THROWS_AS(embed(f.spec("lar_same"), Formalism::MR, f.env), UnsupportedEdge);
    CHECK_THROWS_AS(embed(f.spec("mr_upper"), Formalism::FTR, f.env), UnsupportedEdge);
}

TEST_CASE("an ftr objective rewritten through the injective return matches on ex_threshold") {
    const SeparationFixture& f = fixture("ex_threshold");
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    const int sA = f.env.state_index("sA");
    for (int k = 0; k < 10; k++) {
        const double fa = unif(rng), fb = unif(rng);
        const FtrSpec ftr{[fa, fb, sA](const TrajectoryView& view) {
            const Transition& first = view.stem.empty() ? view.cycle.front() : view.stem.front();
            return first.s2 == sA ? fa : fb;
        }};
        const ObjectiveSpec inmr = embed(ObjectiveSpec{ftr}, Formalism::INMR, f.env);
        for (const Policy& pi : f.policies)
            CHECK(evaluate(f.env, pi, inmr) ==
                  doctest::Approx(evaluate(f.env, pi, ObjectiveSpec{ftr})).epsilon(1e-9));
    }
}

TEST_CASE("every supported edge passes a quick property run") {
    for (const EmbedEdge& edge : supported_embed_edges()) {
        const EdgeCheckResult res = check_embedding_edge(edge, 10, 1234);
        INFO(to_string(edge.source), "->", to_string(edge.target));
        CHECK(res.failures == 0);
    }
}

TEST_CASE("occupancy equality coincides with prefix-distribution equality") {
    std::mt19937_64 rng(63);
    const double gamma = 0.8;
    for (int rep = 0; rep < 15; rep++) {
        const Environment env = random_sparse_environment(rng, 4, 3, true);
        const int depth = static_cast<int>(2 * env.n_states());
        // agreeing pair: differ only on the unreachable state
        Policy p1 = random_sparse_policy(rng, env, 2);
        Policy p2 = p1;
        const int hidden = static_cast<int>(env.n_states()) - 1;
        p2.action_probs[hidden] = random_sparse_policy(rng, env, 2).action_probs[hidden];
        CHECK(lottery_equal(env, p1, p2, gamma));
        CHECK(prefix_distribution(env, p1, depth)
                  .total_variation(prefix_distribution(env, p2, depth)) <= 1e-9);
        // disagreeing pair: perturb a visited state's support
        Policy p3 = p1;
        p3.action_probs[0] = random_sparse_policy(rng, env, 2).action_probs[0];
        if (p3.action_probs[0] == p1.action_probs[0]) continue;
        CHECK_FALSE(lottery_equal(env, p1, p3, gamma));
        CHECK(prefix_distribution(env, p1, depth)
                  .total_variation(prefix_distribution(env, p3, depth)) > 1e-9);
    }
}

TEST_CASE("an ltl objective embeds into ftr with matching satisfaction values") {
    std::mt19937_64 rng(64);
    for (int rep = 0; rep < 15; rep++) {
        const Environment env = random_deterministic_environment(rng, 4, 2);
        const Policy pi = random_deterministic_policy(rng, env);
        const LtlSpec ltl{ltl_eventually(ltl_state(env.states[0])), nullptr};
        const ObjectiveSpec ftr = embed(ObjectiveSpec{ltl}, Formalism::FTR, env);
        CHECK(evaluate(env, pi, ftr) ==
              doctest::Approx(evaluate(env, pi, ObjectiveSpec{ltl})).epsilon(1e-9));
    }
}
