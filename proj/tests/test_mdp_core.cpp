#include "objspec/mdp.hpp"
#include "objspec/random_gen.hpp"
#include "objspec/separations.hpp"

#include <doctest.h>

#include <random>

using namespace objspec;

namespace {

Environment tiny_env() {
    Environment env;
    env.states = {"s0"};
    env.actions = {"a0"};
    env.transition = {{{1.0}}};
    env.initial = {1.0};
    return env;
}

} // namespace

TEST_CASE("validate_environment rejects an off-by-1e-6 row") {
    Environment env = tiny_env();
    env.transition[0][0][0] = 0.999999;
    CHECK_THROWS_AS(validate_environment(env), ValidationError);
}

TEST_CASE("validate_environment accepts a valid one-state environment unchanged") {
    const Environment env = tiny_env();
    const Environment& same = validate_environment(env);
    CHECK(&same == &env);
}

TEST_CASE("the xor fixture environment validates with its split initial distribution") {
    const SeparationFixture& f = fixture("ex_xor");
    CHECK_NOTHROW(validate_environment(f.env));
    CHECK(f.env.initial[0] == doctest::Approx(0.5));
    CHECK(f.env.initial[1] == doctest::Approx(0.5));
}

TEST_CASE("induced_chain of a deterministic policy on deterministic dynamics is a 0/1 matrix") {
    std::mt19937_64 rng(11);
    const Environment env = random_deterministic_environment(rng, 4, 3);
    const Policy pi = random_deterministic_policy(rng, env);
    const InducedChain chain = induced_chain(env, pi);
    for (int s = 0; s < chain.matrix.rows(); s++)
        for (int s2 = 0; s2 < chain.matrix.cols(); s2++) {
            const double v = chain.matrix(s, s2);
            CHECK((v == 0.0 || v == 1.0));
        }
}

TEST_CASE("induced_chain on ex_loop matches the hand computation") {
    const SeparationFixture& f = fixture("ex_loop");
    const double alpha = 0.1;
    const Policy& pi = f.policy("pi_alpha_" + std::to_string(alpha));
    const InducedChain chain = induced_chain(f.env, pi);
    CHECK(chain.matrix(0, 1) == doctest::Approx(alpha).epsilon(1e-12));
    CHECK(chain.matrix(0, 0) == doctest::Approx(1.0 - alpha).epsilon(1e-12));
    CHECK(chain.matrix(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("induced_chain of the uniform policy on uniform dynamics is uniform") {
    Environment env;
    env.states = {"s0", "s1"};
    env.actions = {"a0", "a1"};
    env.transition.assign(2, std::vector<std::vector<double>>(2, {0.5, 0.5}));
    env.initial = {1.0, 0.0};
    Policy uniform;
    uniform.action_probs.assign(2, {0.5, 0.5});
    const InducedChain chain = induced_chain(env, uniform);
    for (int s = 0; s < 2; s++)
        for (int s2 = 0; s2 < 2; s2++) CHECK(chain.matrix(s, s2) == doctest::Approx(0.5));
}

TEST_CASE("induced_chain is linear in the policy") {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 20; rep++) {
        const Environment env = random_environment(rng, 4, 3);
        const Policy p1 = random_policy(rng, env);
        const Policy p2 = random_policy(rng, env);
        const double lambda = 0.3;
        Policy mixed = p1;
        for (std::size_t s = 0; s < env.n_states(); s++)
            for (std::size_t a = 0; a < env.n_actions(); a++)
                mixed.action_probs[s][a] =
                    lambda * p1.action_probs[s][a] + (1.0 - lambda) * p2.action_probs[s][a];
        const Eigen::MatrixXd lhs = induced_chain(env, mixed).matrix;
        const Eigen::MatrixXd rhs = lambda * induced_chain(env, p1).matrix +
                                    (1.0 - lambda) * induced_chain(env, p2).matrix;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("discounted_visitation concentrates on an absorbing start state") {
    const Environment env = tiny_env();
    Policy pi;
    pi.action_probs = {{1.0}};
    const Eigen::VectorXd d = discounted_visitation(env, pi, 0.8);
    CHECK(d(0) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("discounted_visitation on ex_loop under pi_A is the geometric sum") {
    const SeparationFixture& f = fixture("ex_loop");
    const Eigen::VectorXd d = discounted_visitation(f.env, f.policy("pi_A"), 0.5);
    CHECK(d(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d(1) == doctest::Approx(0.0));
}

TEST_CASE("discounted_visitation matches the truncated-sum oracle") {
    std::mt19937_64 rng(13);
    Environment env = random_environment(rng, 3, 3);
    const Policy pi = random_policy(rng, env);
    const double gamma = 0.9;
    const Eigen::MatrixXd p = induced_chain(env, pi).matrix;
    const int n = static_cast<int>(p.rows());
    Eigen::VectorXd rho(n);
    for (int s = 0; s < n; s++) rho(s) = env.initial[s];
    Eigen::VectorXd truncated = Eigen::VectorXd::Zero(n);
    double disc = 1.0;
    for (int t = 0; t < 1000; t++) {
        truncated += disc * rho;
        rho = p.transpose() * rho;
        disc *= gamma;
    }
    const Eigen::VectorXd d = discounted_visitation(env, pi, gamma);
    CHECK((d - truncated).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("total discounted visitation is 1/(1-gamma)") {
    std::mt19937_64 rng(14);
    for (int rep = 0; rep < 25; rep++) {
        const Environment env = random_environment(rng, 4, 3);
        const Policy pi = random_policy(rng, env);
        std::uniform_real_distribution<double> ug(0.0, 0.97);
        const double gamma = ug(rng);
        const Eigen::VectorXd d = discounted_visitation(env, pi, gamma);
        CHECK(d.sum() == doctest::Approx(1.0 / (1.0 - gamma)).epsilon(1e-9));
    }
}

TEST_CASE("chain_decomposition of the identity has singleton classes and identity cesaro") {
    const int n = 3;
    const InducedChain chain{Eigen::MatrixXd::Identity(n, n)};
    const ChainDecomposition dec = chain_decomposition(chain);
    CHECK(dec.classes.size() == n);
    CHECK(dec.transient.empty());
    CHECK((dec.cesaro - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("chain_decomposition handles the periodic two-state swap") {
    Eigen::MatrixXd p(2, 2);
    p << 0, 1, 1, 0;
    const ChainDecomposition dec = chain_decomposition(InducedChain{p});
    REQUIRE(dec.classes.size() == 1);
    CHECK(dec.classes[0] == std::vector<int>{0, 1});
    CHECK(dec.stationary[0](0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dec.stationary[0](1) == doctest::Approx(0.5).epsilon(1e-12));
    for (int s = 0; s < 2; s++)
        for (int s2 = 0; s2 < 2; s2++) CHECK(dec.cesaro(s, s2) == doctest::Approx(0.5));
}

TEST_CASE("cesaro matrix matches power averaging on random chains") {
    std::mt19937_64 rng(15);
    for (int rep = 0; rep < 5; rep++) {
        const Environment env = random_environment(rng, 4, 2);
        const Policy pi = random_policy(rng, env);
        const Eigen::MatrixXd p = induced_chain(env, pi).matrix;
        const ChainDecomposition dec = chain_decomposition(InducedChain{p});
        const int n = static_cast<int>(p.rows());
        Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
        Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(n, n);
        const int big_n = 100000;
        for (int t = 0; t < big_n; t++) {
            avg += power;
            power = power * p;
        }
        avg /= static_cast<double>(big_n);
        CHECK((avg - dec.cesaro).cwiseAbs().maxCoeff() <= 1e-4);
    }
}

TEST_CASE("the cesaro matrix is a stochastic idempotent fixed point") {
    std::mt19937_64 rng(16);
    for (int rep = 0; rep < 20; rep++) {
        const Environment env = random_environment(rng, 4, 3);
        const Policy pi = random_policy(rng, env);
        const Eigen::MatrixXd p = induced_chain(env, pi).matrix;
        const ChainDecomposition dec = chain_decomposition(InducedChain{p});
        CHECK((dec.cesaro * p - dec.cesaro).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((dec.cesaro * dec.cesaro - dec.cesaro).cwiseAbs().maxCoeff() <= 1e-8);
        for (int s = 0; s < p.rows(); s++) {
            CHECK(dec.cesaro.row(s).sum() == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(dec.absorption.row(s).sum() == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("cesaro rows reproduce simulated long-run state frequencies") {
    std::mt19937_64 rng(17);
    // a couple of random chains plus the periodic swap
    std::vector<Eigen::MatrixXd> chains;
    for (int rep = 0; rep < 2; rep++) {
        const Environment env = random_sparse_environment(rng, 4, 2, false);
        chains.push_back(induced_chain(env, random_policy(rng, env)).matrix);
    }
    Eigen::MatrixXd swap(2, 2);
    swap << 0, 1, 1, 0;
    chains.push_back(swap);

    std::mt19937_64 sim_rng(20240601);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const Eigen::MatrixXd& p : chains) {
        const ChainDecomposition dec = chain_decomposition(InducedChain{p});
        const int n = static_cast<int>(p.rows());
        for (int start = 0; start < n; start++) {
            std::vector<long> counts(n, 0);
            int s = start;
            const long steps = 1000000;
            for (long t = 0; t < steps; t++) {
                counts[s]++;
                double u = unif(sim_rng);
                double acc = 0.0;
                for (int s2 = 0; s2 < n; s2++) {
                    acc += p(s, s2);
                    if (u <= acc) {
                        s = s2;
                        break;
                    }
                }
            }
            for (int s2 = 0; s2 < n; s2++) {
                const double freq = static_cast<double>(counts[s2]) / static_cast<double>(steps);
                CHECK(std::abs(freq - dec.cesaro(start, s2)) <= 2e-3);
            }
        }
    }
}

TEST_CASE("shape errors raise DimensionMismatch") {
    const SeparationFixture& f = fixture("ex_loop");
    Policy wrong;
    wrong.action_probs = {{1.0}};
    CHECK_THROWS_AS(induced_chain(f.env, wrong), DimensionMismatch);
    RewardFunction r = RewardFunction::zeros(1, 1);
    CHECK_THROWS_AS(check_reward_shape(f.env, r), DimensionMismatch);
}
