// Acceptance suite: replays every headline result at its stated tolerance and
// prints one line per criterion.
#include "objspec/builtins.hpp"
#include "objspec/embed.hpp"
#include "objspec/hasse.hpp"
#include "objspec/injective.hpp"
#include "objspec/random_gen.hpp"
#include "objspec/separations.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <set>

using namespace objspec;

namespace {

struct Criterion {
    const char* name = "";
    bool pass = true;
    std::string detail{};

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
        CHECK_MESSAGE(ok, what);
    }

    ~Criterion() {
        std::printf("ACCEPTANCE %-28s %s%s%s\n", name, pass ? "PASS" : "FAIL",
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
    }
};

bool close(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

} // namespace

TEST_CASE("criterion 1: closed-form reproduction") {
    Criterion crit{"1:closed-forms"};

    const SeparationFixture& loop = fixture("ex_loop");
    crit.require(close(evaluate(loop.env, loop.policy("pi_A"), loop.spec("lar_loop")), 1.0),
                 "lar at alpha=0");
    for (double alpha : {0.5, 0.1, 0.01}) {
        const Policy& pi = loop.policy("pi_alpha_" + std::to_string(alpha));
        crit.require(close(evaluate(loop.env, pi, loop.spec("lar_loop")), 0.0),
                     "lar at alpha=" + std::to_string(alpha));
        crit.require(close(evaluate(loop.env, pi, loop.spec("ltl_never_sA")), 0.0),
                     "ltl at alpha=" + std::to_string(alpha));
    }
    crit.require(close(evaluate(loop.env, loop.policy("pi_A"), loop.spec("ltl_never_sA")), 1.0),
                 "ltl at alpha=0");

    const SeparationFixture& paths = fixture("ex_two_paths");
    crit.require(close(evaluate(paths.env, paths.policy("pi_u"), paths.spec("mr_upper")), 1.0),
                 "two-path upper mr value");
    crit.require(close(evaluate(paths.env, paths.policy("pi_l"), paths.spec("mr_upper")), 0.0),
                 "two-path lower mr value");
    crit.require(close(evaluate(paths.env, paths.policy("pi_u"), paths.spec("lar_same")),
                       evaluate(paths.env, paths.policy("pi_l"), paths.spec("lar_same"))),
                 "two-path lar tie");

    const SeparationFixture& single = fixture("ex_single_state");
    crit.require(close(evaluate(single.env, single.policy("pi_A"), single.spec("mr_three")), 2.0),
                 "single-state +1/(1-gamma)");
    crit.require(close(evaluate(single.env, single.policy("pi_B"), single.spec("mr_three")), 0.0),
                 "single-state 0");
    crit.require(
        close(evaluate(single.env, single.policy("pi_C"), single.spec("mr_three")), -2.0),
        "single-state -1/(1-gamma)");

    const SeparationFixture& xorf = fixture("ex_xor");
    const double g = xorf.gamma;
    for (const auto& [pi, expected] :
         std::vector<std::pair<std::string, double>>{{"pi_AB", 1.0 / (1.0 - g)},
                                                     {"pi_BA", 1.0 / (1.0 - g)},
                                                     {"pi_AA", 0.0},
                                                     {"pi_BB", 0.0}})
        crit.require(close(evaluate(xorf.env, xorf.policy(pi), xorf.spec("onmr_abs")), expected),
                     "xor onmr " + pi);
    for (const auto& [pi, expected] :
         std::vector<std::pair<std::string, double>>{{"pi_AB", g / (1.0 - g)},
                                                     {"pi_BA", g / (1.0 - g)},
                                                     {"pi_AA", 0.0},
                                                     {"pi_BB", 0.0}})
        crit.require(close(evaluate(xorf.env, xorf.policy(pi), xorf.spec("rm_xor")), expected),
                     "xor rm " + pi);
    for (const auto& [pi, expected] : std::vector<std::pair<std::string, double>>{
             {"pi_AB", 1.0}, {"pi_BA", 1.0}, {"pi_AA", 0.0}, {"pi_BB", 0.0}})
        crit.require(
            close(evaluate(xorf.env, xorf.policy(pi), xorf.spec("ltl_alternating")), expected),
            "xor ltl " + pi);

    const SeparationFixture& thr = fixture("ex_threshold");
    for (const auto& [pi, expected] : std::vector<std::pair<std::string, double>>{
             {"pi_0", 0.0}, {"pi_049", 0.0}, {"pi_05", 1.0}, {"pi_051", 1.0}, {"pi_1", 1.0}})
        crit.require(
            close(evaluate(thr.env, thr.policy(pi), thr.spec("onmr_threshold")), expected),
            "threshold " + pi);

    const SeparationFixture& traj = fixture("ex_three_traj");
    const double offset = traj.gamma * 2.0 / (1.0 - traj.gamma);
    crit.require(close(evaluate(traj.env, traj.policy("pi_det_B"), traj.spec("rrl_support")),
                       2.0 + offset),
                 "support-count deterministic");
    crit.require(close(evaluate(traj.env, traj.policy("pi_two_AC"), traj.spec("rrl_support")),
                       1.0 + offset),
                 "support-count two-action");
    crit.require(
        close(evaluate(traj.env, traj.policy("pi_full"), traj.spec("rrl_support")), offset),
        "support-count full support");
}

TEST_CASE("criterion 2: lp corroboration") {
    Criterion crit{"2:lp-corroboration"};

    const SeparationFixture& xorf = fixture("ex_xor");
    const std::vector<double> grid = default_gamma_grid();
    const FeasibilityResult mr = mr_lp_check(xorf.env, xorf.policies, xorf.target, grid, 1e-6);
    crit.require(!mr.feasible, "xor mr grid infeasibility");
    crit.require(mr.per_gamma.size() == grid.size(), "per-gamma report size");
    const FeasibilityResult rrl = rrl_lp_check(xorf.env, xorf.policies, xorf.target,
                                               {{1.0, 0.0}, {0.0, 1.0}}, grid, 1e-6);
    crit.require(!rrl.feasible, "xor rrl grid infeasibility");

    const SeparationFixture& cycles = fixture("ex_two_cycles");
    std::vector<std::vector<double>> support;
    for (int a = 0; a < 4; a++) {
        std::vector<double> one_hot(4, 0.0);
        one_hot[a] = 1.0;
        support.push_back(one_hot);
    }
    const FeasibilityResult cyc =
        rrl_lp_check(cycles.env, cycles.policies, cycles.target, support, grid, 1e-6);
    crit.require(!cyc.feasible, "two-cycle rrl grid infeasibility");

    const SeparationFixture& paths = fixture("ex_two_paths");
    const FeasibilityResult fe = mr_lp_check(paths.env, paths.policies, paths.target, grid, 1e-6);
    crit.require(fe.feasible, "upper-path feasibility");
    crit.require(fe.margin >= 5e-7, "re-evaluated witness margin");
}

TEST_CASE("criterion 3: continuity dichotomy") {
    Criterion crit{"3:continuity"};
    const SeparationFixture& loop = fixture("ex_loop");
    std::vector<std::pair<double, Policy>> family;
    for (double alpha : {0.5, 0.1, 0.01, 0.001, 0.0001})
        family.emplace_back(alpha, loop.policy("pi_alpha_" + std::to_string(alpha)));
    const Policy& limit = loop.policy("pi_A");

    // every available MR/RM objective matches its limit, including the
    // machine obtained by rewriting the MR objective
    for (const std::string name : {"mr_loop", "rm_loop"})
        crit.require(
            continuity_probe(loop.env, family, loop.spec(name), limit).match,
            name + " continuity");
    const ObjectiveSpec embedded_rm = embed(loop.spec("mr_loop"), Formalism::RM, loop.env);
    crit.require(continuity_probe(loop.env, family, embedded_rm, limit).match,
                 "embedded machine continuity");
    for (const std::string name : {"lar_loop", "ltl_never_sA"})
        crit.require(
            !continuity_probe(loop.env, family, loop.spec(name), limit).match,
            name + " discontinuity");
}

TEST_CASE("criterion 4: equivalence-theorem properties") {
    Criterion crit{"4:equivalence-theorems"};
    std::mt19937_64 rng(20240815);

    // (a) the delta basis realizes the occupancy measure
    for (int rep = 0; rep < 50; rep++) {
        const Environment env = random_environment(rng, 4, 3);
        const Policy pi = random_policy(rng, env);
        const double gamma = 0.9;
        const std::vector<double> j =
            policy_eval_vector(env, pi, build_delta_reward_basis(env), gamma);
        const OccupancyMeasure m = occupancy_measure(env, pi, gamma);
        double worst = 0.0;
        for (std::size_t k = 0; k < j.size(); k++)
            worst = std::max(worst, std::abs(j[k] - m.values[k]));
        crit.require(worst <= 1e-9, "delta basis entrywise equality");
        if (worst > 1e-9) break;
    }

    // (b) occupancy equality iff depth-2n prefix equality, both directions
    for (int rep = 0; rep < 50; rep++) {
        const Environment env = random_sparse_environment(rng, 4, 3, true);
        const int depth = static_cast<int>(2 * env.n_states());
        const double gamma = 0.8;
        Policy p1 = random_sparse_policy(rng, env, 2);
        Policy p2 = p1;
        const int hidden = static_cast<int>(env.n_states()) - 1;
        p2.action_probs[hidden] = random_sparse_policy(rng, env, 2).action_probs[hidden];
        const bool m_equal = lottery_equal(env, p1, p2, gamma);
        const bool l_equal = prefix_distribution(env, p1, depth)
                                 .total_variation(prefix_distribution(env, p2, depth)) <= 1e-9;
        crit.require(m_equal && l_equal, "agreeing pair stays equal both ways");

        Policy p3 = p1;
        p3.action_probs[0] = random_sparse_policy(rng, env, 2).action_probs[0];
        if (p3.action_probs[0] == p1.action_probs[0]) continue;
        const bool m_diff = !lottery_equal(env, p1, p3, gamma);
        const bool l_diff = prefix_distribution(env, p1, depth)
                                .total_variation(prefix_distribution(env, p3, depth)) > 1e-9;
        crit.require(m_diff && l_diff, "disagreeing pair differs both ways");
        if (!crit.pass) break;
    }

    // (c) trajectory-value round trip through the injective return
    int instances = 0;
    for (int rep = 0; rep < 50; rep++) {
        const Environment env = random_deterministic_environment(rng, 4, 3);
        const Policy pi = random_deterministic_policy(rng, env);
        auto reward = std::make_shared<RewardFunction>(random_reward(rng, env));
        const FtrSpec ftr{[reward](const TrajectoryView& view) {
            double v = 0.0, disc = 1.0;
            for (const Transition& x : view.stem) {
                v += disc * reward->at(x.s, x.a, x.s2);
                disc *= 0.45;
            }
            if (!view.cycle.empty()) {
                double block = 0.0, b = 1.0;
                for (const Transition& x : view.cycle) {
                    block += b * reward->at(x.s, x.a, x.s2);
                    b *= 0.45;
                }
                v += disc * block /
                     (1.0 - std::pow(0.45, static_cast<double>(view.cycle.size())));
            }
            return v;
        }};
        const ObjectiveSpec inmr = embed(ObjectiveSpec{ftr}, Formalism::INMR, env);
        const double js = evaluate(env, pi, ObjectiveSpec{ftr});
        const double jt = evaluate(env, pi, inmr);
        crit.require(close(js, jt), "round trip equality");
        instances++;
        if (!crit.pass) break;
    }
    crit.require(instances == 50, "all round-trip instances ran");
}

TEST_CASE("criterion 5: embedding suite") {
    Criterion crit{"5:embedding-suite"};
    std::uint64_t seed = 31400;
    for (const EmbedEdge& edge : supported_embed_edges()) {
        const EdgeCheckResult res = check_embedding_edge(edge, 50, seed++);
        crit.require(res.failures == 0, to_string(edge.source) + "->" +
                                            to_string(edge.target) + " property run");
    }
}

TEST_CASE("criterion 6: well-definedness properties") {
    Criterion crit{"6:well-definedness"};
    std::mt19937_64 rng(20240816);
    for (int rep = 0; rep < 50; rep++) {
        const Environment env = random_sparse_environment(rng, 4, 3, true);
        const double gamma = 0.85;
        Policy p1 = random_policy(rng, env);
        Policy p2 = p1;
        const int hidden = static_cast<int>(env.n_states()) - 1;
        p2.action_probs[hidden] = random_policy(rng, env).action_probs[hidden];
        if (!lottery_equal(env, p1, p2, gamma)) {
            crit.require(false, "constructed pair must share its occupancy");
            break;
        }
        const RewardFunction r = random_reward(rng, env);
        crit.require(close(eval_rrl(env, p1, r, 0.6, shannon_entropy, gamma),
                           eval_rrl(env, p2, r, 0.6, shannon_entropy, gamma)),
                     "rrl agrees on the pair");
        const std::vector<RewardFunction> basis = build_delta_reward_basis(env);
        crit.require(close(eval_omorl(env, p1, basis, builtin_vector_fn("sum"), gamma),
                           eval_omorl(env, p2, basis, builtin_vector_fn("sum"), gamma)),
                     "omorl agrees on the pair");
        const OccupancyFn f = [](const OccupancyMeasure& m) { return m.total_mass(); };
        crit.require(close(eval_fomr(env, p1, f, gamma), eval_fomr(env, p2, f, gamma)),
                     "fomr agrees on the pair");
        if (!crit.pass) break;
    }

    // trajectory-value mixtures interpolate exactly on the two-trajectory env
    const SeparationFixture& thr = fixture("ex_threshold");
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    const int sA = thr.env.state_index("sA");
    for (int k = 0; k < 10; k++) {
        const double fa = unif(rng), fb = unif(rng);
        const FtrSpec ftr{[fa, fb, sA](const TrajectoryView& view) {
            const Transition& first = view.stem.empty() ? view.cycle.front() : view.stem.front();
            return first.s2 == sA ? fa : fb;
        }};
        for (const std::string name : {"pi_049", "pi_05", "pi_051"}) {
            const Policy& pi = thr.policy(name);
            const double p = pi.action_probs[0][thr.env.action_index("a_A")];
            const double j = eval_trajectory_exact(thr.env, pi, ObjectiveSpec{ftr});
            crit.require(std::abs(j - (p * fa + (1.0 - p) * fb)) <= 1e-12,
                         "mixture linearity at " + name);
        }
    }
}

TEST_CASE("criterion 7: hasse integrity") {
    Criterion crit{"7:hasse-integrity"};
    const RelationTable& table = relation_table();
    HasseGraph graph;
    try {
        graph = derive_hasse(table);
    } catch (const InconsistentTable& e) {
        crit.require(false, std::string("table inconsistent: ") + e.what());
        return;
    }
    auto members = [&](Formalism f) {
        std::set<Formalism> out;
        for (Formalism member : graph.classes[graph.class_of(f)]) out.insert(member);
        return out;
    };
    crit.require(members(Formalism::INMR) ==
                     std::set<Formalism>{Formalism::INMR, Formalism::IMORL, Formalism::FTR},
                 "inner trio merged");
    crit.require(members(Formalism::OMORL) ==
                     std::set<Formalism>{Formalism::OMORL, Formalism::FOMR, Formalism::FTLR},
                 "outer trio merged");
    crit.require(members(Formalism::GOMORL) ==
                     std::set<Formalism>{Formalism::GOMORL, Formalism::OMO, Formalism::TLO},
                 "ordering trio merged");
    // with those merges and eight singleton classes the diagram has 11 nodes
    crit.require(graph.classes.size() == 11,
                 "class count recomputed from the relation (= 11)");
    const int po = graph.class_of(Formalism::PO);
    bool po_top = true;
    for (const auto& [hi, lo] : graph.edges)
        if (lo == po) po_top = false;
    crit.require(po_top && members(Formalism::PO).size() == 1, "PO at the top");

    const VerificationReport report = verify_all();
    crit.require(report.failures == 0, "verify_all reports zero failures");
    const std::string dot1 = emit_dot(graph);
    const std::string dot2 = emit_dot(derive_hasse(relation_table()));
    crit.require(dot1 == dot2 && !dot1.empty(), "byte-stable dot output");
    std::printf("  hasse classes: %zu, covering edges: %zu\n", graph.classes.size(),
                graph.edges.size());
}

TEST_CASE("criterion 8: oracle checks") {
    Criterion crit{"8:oracles"};
    std::mt19937_64 rng(20240817);

    // cesaro vs power averaging on 20 random chains
    for (int rep = 0; rep < 20; rep++) {
        const Environment env = random_environment(rng, 4, 2);
        const Policy pi = random_policy(rng, env);
        const Eigen::MatrixXd p = induced_chain(env, pi).matrix;
        const ChainDecomposition dec = chain_decomposition(InducedChain{p});
        const int n = static_cast<int>(p.rows());
        Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
        Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(n, n);
        for (int t = 0; t < 100000; t++) {
            avg += power;
            power = power * p;
        }
        avg /= 1e5;
        crit.require((avg - dec.cesaro).cwiseAbs().maxCoeff() <= 1e-4,
                     "power-averaging agreement");
        if (!crit.pass) break;
    }

    // occupancy vs horizon-1000 truncation
    {
        const Environment env = random_environment(rng, 3, 2);
        const Policy pi = random_policy(rng, env);
        const double gamma = 0.9;
        const int n = static_cast<int>(env.n_states()), a = static_cast<int>(env.n_actions());
        const Eigen::MatrixXd p = induced_chain(env, pi).matrix;
        Eigen::VectorXd rho(n);
        for (int s = 0; s < n; s++) rho(s) = env.initial[s];
        std::vector<double> brute(static_cast<std::size_t>(n) * a * n, 0.0);
        double disc = 1.0;
        for (int t = 0; t < 1000; t++) {
            for (int s = 0; s < n; s++)
                for (int ai = 0; ai < a; ai++)
                    for (int s2 = 0; s2 < n; s2++)
                        brute[(static_cast<std::size_t>(s) * a + ai) * n + s2] +=
                            disc * rho(s) * pi.prob(s, ai) * env.trans(s, ai, s2);
            rho = p.transpose() * rho;
            disc *= gamma;
        }
        const OccupancyMeasure m = occupancy_measure(env, pi, gamma);
        double worst = 0.0;
        for (std::size_t k = 0; k < brute.size(); k++)
            worst = std::max(worst, std::abs(m.values[k] - brute[k]));
        crit.require(worst <= 1e-8, "truncation agreement");
    }

    // reward-machine evaluation vs direct simulation on the xor fixture
    {
        const SeparationFixture& xorf = fixture("ex_xor");
        const auto& rm = std::get<RmSpec>(xorf.spec("rm_xor"));
        const Policy& pi = xorf.policy("pi_AB");
        const double exact = eval_rm(xorf.env, pi, rm.machine);
        std::mt19937_64 sim(424242);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        auto draw = [&](const std::vector<double>& dist) {
            double u = unif(sim), acc = 0.0;
            for (std::size_t i = 0; i < dist.size(); i++) {
                acc += dist[i];
                if (u <= acc) return static_cast<int>(i);
            }
            return static_cast<int>(dist.size()) - 1;
        };
        const std::size_t samples = 100000;
        const int horizon = 60; // gamma^60 / (1-gamma) is far below 3 sigma
        double sum = 0.0, sumsq = 0.0;
        for (std::size_t k = 0; k < samples; k++) {
            int s = draw(xorf.env.initial);
            int u = rm.machine.start;
            double value = 0.0, disc = 1.0;
            for (int t = 0; t < horizon; t++) {
                const int a = draw(pi.action_probs[s]);
                const int s2 = draw(xorf.env.transition[s][a]);
                const int u2 = rm.machine.step(u, s, a, s2);
                value += disc * rm.machine.delta_r[u][u2].at(s, a, s2);
                disc *= rm.machine.gamma;
                s = s2;
                u = u2;
            }
            sum += value;
            sumsq += value * value;
        }
        const double mean = sum / static_cast<double>(samples);
        const double var = std::max(0.0, sumsq / static_cast<double>(samples) - mean * mean);
        const double sigma = std::sqrt(var / static_cast<double>(samples));
        crit.require(std::abs(mean - exact) <= 3.0 * std::max(sigma, 1e-12),
                     "monte-carlo agreement within three standard errors");
    }
}
