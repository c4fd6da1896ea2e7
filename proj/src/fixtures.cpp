#include "objspec/builtins.hpp"
#include "objspec/injective.hpp"
#include "objspec/ltl.hpp"
#include "objspec/separations.hpp"

#include <cmath>
#include <mutex>
#include <set>

namespace objspec {

SeparationReport run_separation_impl(const SeparationFixture& f, bool full);

int SeparationFixture::policy_index(const std::string& pname) const {
    for (std::size_t i = 0; i < policy_names.size(); i++)
        if (policy_names[i] == pname) return static_cast<int>(i);
    throw UnknownFixture("fixture " + name + " has no policy named " + pname);
}

const Policy& SeparationFixture::policy(const std::string& pname) const {
    return policies[policy_index(pname)];
}

const ObjectiveSpec& SeparationFixture::spec(const std::string& sname) const {
    const auto it = named_specs.find(sname);
    if (it == named_specs.end())
        throw UnknownFixture("fixture " + name + " has no objective named " + sname);
    return it->second;
}

namespace {

using Rel = OrderingConstraint::Relation;

struct EnvBuilder {
    Environment env;

    EnvBuilder(std::vector<std::string> states, std::vector<std::string> actions) {
        env.states = std::move(states);
        env.actions = std::move(actions);
        const std::size_t n = env.n_states(), a = env.n_actions();
        // every action self-loops until a transition is declared for it
        env.transition.assign(n, std::vector<std::vector<double>>(a, std::vector<double>(n, 0.0)));
        for (std::size_t s = 0; s < n; s++)
            for (std::size_t ai = 0; ai < a; ai++) env.transition[s][ai][s] = 1.0;
        env.initial.assign(n, 0.0);
        env.initial[0] = 1.0;
    }

    EnvBuilder& arc(const std::string& s, const std::string& a, const std::string& s2,
                    double p = 1.0) {
        const int si = env.state_index(s), ai = env.action_index(a), s2i = env.state_index(s2);
        // first declared arc for (s,a) clears the default self-loop
        auto& row = env.transition[si][ai];
        if (declared_.insert({si, ai}).second) std::fill(row.begin(), row.end(), 0.0);
        row[s2i] += p;
        return *this;
    }

    EnvBuilder& initial(const std::vector<std::pair<std::string, double>>& dist) {
        std::fill(env.initial.begin(), env.initial.end(), 0.0);
        for (const auto& [s, p] : dist) env.initial[env.state_index(s)] = p;
        return *this;
    }

    Environment build() {
        validate_environment(env);
        return env;
    }

private:
    std::set<std::pair<int, int>> declared_;
};

Policy table_policy(const Environment& env,
                    const std::vector<std::vector<std::pair<std::string, double>>>& rows) {
    Policy pi;
    pi.action_probs.assign(env.n_states(), std::vector<double>(env.n_actions(), 0.0));
    for (std::size_t s = 0; s < rows.size(); s++)
        for (const auto& [a, p] : rows[s]) pi.action_probs[s][env.action_index(a)] = p;
    validate_policy(env, pi);
    return pi;
}

RewardFunction reward_on(const Environment& env,
                         const std::vector<std::tuple<std::string, std::string, std::string,
                                                      double>>& entries) {
    RewardFunction r = RewardFunction::zeros(env.n_states(), env.n_actions());
    for (const auto& [s, a, s2, v] : entries)
        r.at(env.state_index(s), env.action_index(a), env.state_index(s2)) = v;
    return r;
}

/// Reward that pays 1 for every transition using the given action.
RewardFunction reward_for_action(const Environment& env, const std::string& action) {
    RewardFunction r = RewardFunction::zeros(env.n_states(), env.n_actions());
    const int ai = env.action_index(action);
    for (std::size_t s = 0; s < env.n_states(); s++)
        for (std::size_t s2 = 0; s2 < env.n_states(); s2++) r.values[s][ai][s2] = 1.0;
    return r;
}

/// Reward 1[source state == s] for every action and successor.
RewardFunction reward_for_source(const Environment& env, const std::string& state) {
    RewardFunction r = RewardFunction::zeros(env.n_states(), env.n_actions());
    const int si = env.state_index(state);
    for (std::size_t a = 0; a < env.n_actions(); a++)
        for (std::size_t s2 = 0; s2 < env.n_states(); s2++) r.values[si][a][s2] = 1.0;
    return r;
}

const std::vector<double> kAlphaGrid = {0.5, 0.1, 0.01, 0.001, 0.0001};
const std::vector<double> kThetaGrid = {0.1, 0.3, 0.5, 0.7, 0.9};

// --- ex_loop -----------------------------------------------------------------

SeparationFixture make_ex_loop() {
    SeparationFixture f;
    f.name = "ex_loop";
    f.gamma = 0.9;
    f.env = EnvBuilder({"s0", "sA"}, {"a_A", "a_B", "a_C"})
                .arc("s0", "a_A", "s0")
                .arc("s0", "a_B", "sA")
                .arc("sA", "a_C", "sA")
                .build();

    auto policy_alpha = [&](double alpha) {
        return table_policy(f.env, {{{"a_A", 1.0 - alpha}, {"a_B", alpha}}, {{"a_C", 1.0}}});
    };
    f.policy_names = {"pi_A", "pi_B"};
    f.policies = {policy_alpha(0.0), table_policy(f.env, {{{"a_B", 1.0}}, {{"a_C", 1.0}}})};
    for (double alpha : kAlphaGrid) {
        f.policy_names.push_back("pi_alpha_" + std::to_string(alpha));
        f.policies.push_back(policy_alpha(alpha));
    }
    // pi_A strictly above pi_B, every pi_alpha tied with pi_B
    f.target.pairs.push_back({0, 1, Rel::StrictlyGreater});
    for (std::size_t k = 2; k < f.policies.size(); k++)
        f.target.pairs.push_back({1, static_cast<int>(k), Rel::Equal});

    const RewardFunction r_source = reward_for_source(f.env, "s0");
    f.named_specs.emplace("lar_loop", LarSpec{r_source});
    f.named_specs.emplace("ltl_never_sA",
                          LtlSpec{parse_ltl("(not (eventually (state sA)))"), nullptr});
    f.named_specs.emplace("mr_loop", MrSpec{r_source, f.gamma});
    {
        // two machine states: tracking whether sA has been entered
        RewardMachine m;
        m.machine_states = {"u0", "u1"};
        m.start = 0;
        const std::size_t n = f.env.n_states(), a = f.env.n_actions();
        const int sA = f.env.state_index("sA");
        m.delta_u.assign(2, std::vector<std::vector<std::vector<int>>>(
                                n, std::vector<std::vector<int>>(a, std::vector<int>(n, 0))));
        for (std::size_t s = 0; s < n; s++)
            for (std::size_t ai = 0; ai < a; ai++)
                for (std::size_t s2 = 0; s2 < n; s2++) {
                    m.delta_u[0][s][ai][s2] = static_cast<int>(s2) == sA ? 1 : 0;
                    m.delta_u[1][s][ai][s2] = 1;
                }
        RewardFunction zero = RewardFunction::zeros(n, a);
        m.delta_r = {{r_source, r_source}, {zero, zero}};
        m.gamma = f.gamma;
        f.named_specs.emplace("rm_loop", RmSpec{std::move(m)});
    }

    f.claims = {{Formalism::LAR, true, "continuity-dichotomy"},
                {Formalism::LTL, true, "continuity-dichotomy"},
                {Formalism::MR, false, "continuity-dichotomy"},
                {Formalism::RM, false, "continuity-dichotomy"}};
    return f;
}

// --- ex_two_paths ------------------------------------------------------------

SeparationFixture make_ex_two_paths() {
    SeparationFixture f;
    f.name = "ex_two_paths";
    f.gamma = 0.5;
    f.env = EnvBuilder({"s0", "sA", "sB", "sC"}, {"a_A", "a_B", "a_C", "a_D", "a_E"})
                .arc("s0", "a_A", "sA")
                .arc("s0", "a_B", "sB")
                .arc("sA", "a_C", "sC")
                .arc("sB", "a_D", "sC")
                .arc("sC", "a_E", "sC")
                .build();
    const auto rest = std::vector<std::vector<std::pair<std::string, double>>>{
        {{"a_A", 1.0}}, {{"a_C", 1.0}}, {{"a_D", 1.0}}, {{"a_E", 1.0}}};
    auto upper = rest;
    auto lower = rest;
    lower[0] = {{"a_B", 1.0}};
    f.policy_names = {"pi_u", "pi_l"};
    f.policies = {table_policy(f.env, upper), table_policy(f.env, lower)};
    f.target.pairs = {{0, 1, Rel::StrictlyGreater}};

    const RewardFunction r = reward_on(f.env, {{"s0", "a_A", "sA", 1.0}});
    f.named_specs.emplace("mr_upper", MrSpec{r, f.gamma});
    f.named_specs.emplace("lar_same", LarSpec{r});
    f.named_specs.emplace("ltl_reach_sA", LtlSpec{parse_ltl("(eventually (state sA))"), nullptr});

    f.claims = {{Formalism::MR, true, "transient-blindness"},
                {Formalism::LTL, true, "transient-blindness"},
                {Formalism::LAR, false, "transient-blindness"}};
    return f;
}

// --- ex_single_state ---------------------------------------------------------

SeparationFixture make_ex_single_state() {
    SeparationFixture f;
    f.name = "ex_single_state";
    f.gamma = 0.5;
    f.env = EnvBuilder({"s0"}, {"a_A", "a_B", "a_C"}).build(); // all self-loops

    f.policy_names = {"pi_A", "pi_B", "pi_C"};
    for (const std::string a : {"a_A", "a_B", "a_C"})
        f.policies.push_back(table_policy(f.env, {{{a, 1.0}}}));
    f.target.pairs = {{0, 1, Rel::StrictlyGreater}, {1, 2, Rel::StrictlyGreater}};

    const RewardFunction r = reward_on(
        f.env, {{"s0", "a_A", "s0", 1.0}, {"s0", "a_B", "s0", 0.0}, {"s0", "a_C", "s0", -1.0}});
    f.named_specs.emplace("mr_three", MrSpec{r, f.gamma});
    f.named_specs.emplace("lar_three", LarSpec{r});

    f.claims = {{Formalism::MR, true, "binary-range"},
                {Formalism::LAR, true, "binary-range"},
                {Formalism::LTL, false, "binary-range"}};
    return f;
}

// --- ex_xor ------------------------------------------------------------------

SeparationFixture make_ex_xor() {
    SeparationFixture f;
    f.name = "ex_xor";
    f.gamma = 0.5;
    f.env = EnvBuilder({"sA", "sB"}, {"a_A", "a_B"})
                .arc("sA", "a_A", "sB")
                .arc("sA", "a_B", "sB")
                .arc("sB", "a_A", "sA")
                .arc("sB", "a_B", "sA")
                .initial({{"sA", 0.5}, {"sB", 0.5}})
                .build();

    auto pol = [&](const std::string& inA, const std::string& inB) {
        return table_policy(f.env, {{{inA, 1.0}}, {{inB, 1.0}}});
    };
    f.policy_names = {"pi_AB", "pi_BA", "pi_AA", "pi_BB"};
    f.policies = {pol("a_A", "a_B"), pol("a_B", "a_A"), pol("a_A", "a_A"), pol("a_B", "a_B")};
    f.target.pairs = {{0, 1, Rel::Equal}, {1, 2, Rel::StrictlyGreater}, {2, 3, Rel::Equal}};

    const RewardFunction signed_r = reward_on(f.env, {{"sA", "a_A", "sB", -1.0},
                                                      {"sA", "a_B", "sB", 1.0},
                                                      {"sB", "a_A", "sA", 1.0},
                                                      {"sB", "a_B", "sA", -1.0}});
    f.named_specs.emplace("onmr_abs", OnmrSpec{signed_r, builtin_scalar_fn("abs"), f.gamma});
    {
        // machine remembering the previous action; pays for alternating
        RewardMachine m;
        m.machine_states = {"u0", "uA", "uB"};
        m.start = 0;
        const std::size_t n = f.env.n_states(), a = f.env.n_actions();
        const int aA = f.env.action_index("a_A");
        m.delta_u.assign(3, std::vector<std::vector<std::vector<int>>>(
                                n, std::vector<std::vector<int>>(a, std::vector<int>(n, 0))));
        for (int u = 0; u < 3; u++)
            for (std::size_t s = 0; s < n; s++)
                for (std::size_t ai = 0; ai < a; ai++)
                    for (std::size_t s2 = 0; s2 < n; s2++)
                        m.delta_u[u][s][ai][s2] = static_cast<int>(ai) == aA ? 1 : 2;
        const RewardFunction zero = RewardFunction::zeros(n, a);
        const RewardFunction pay_b = reward_for_action(f.env, "a_B");
        const RewardFunction pay_a = reward_for_action(f.env, "a_A");
        m.delta_r = {{zero, zero, zero}, {pay_b, pay_b, pay_b}, {pay_a, pay_a, pay_a}};
        m.gamma = f.gamma;
        f.named_specs.emplace("rm_xor", RmSpec{std::move(m)});
    }
    f.named_specs.emplace(
        "ltl_alternating",
        LtlSpec{parse_ltl("(always (and (implies (act a_A) (next (act a_B)))"
                          " (implies (act a_B) (next (act a_A)))))"),
                nullptr});

    f.claims = {{Formalism::RM, true, "xor-parity"},
                {Formalism::ONMR, true, "xor-parity"},
                {Formalism::LTL, true, "xor-parity"},
                {Formalism::MR, false, "xor-parity"},
                {Formalism::RRL, false, "xor-parity"}};
    return f;
}

// --- ex_five_actions ---------------------------------------------------------

SeparationFixture make_ex_five_actions() {
    SeparationFixture f;
    f.name = "ex_five_actions";
    f.gamma = 0.5;
    f.env = EnvBuilder({"s0", "sA"}, {"a_A", "a_B", "a_C", "a_X", "a_D", "a_E"})
                .arc("s0", "a_A", "s0")
                .arc("s0", "a_B", "s0")
                .arc("s0", "a_C", "s0")
                .arc("s0", "a_X", "sA")
                .arc("sA", "a_D", "sA")
                .arc("sA", "a_E", "sA")
                .build();

    auto det = [&](const std::string& first, const std::string& second) {
        return table_policy(f.env, {{{first, 1.0}}, {{second, 1.0}}});
    };
    f.policy_names = {"pi_A", "pi_B", "pi_C", "pi_D", "pi_E"};
    f.policies = {det("a_A", "a_D"), det("a_B", "a_D"), det("a_C", "a_D"), det("a_X", "a_D"),
                  det("a_X", "a_E")};
    for (const std::string i : {"A", "B", "C"})
        for (const std::string j : {"D", "E"})
            for (double theta : kThetaGrid) {
                f.policy_names.push_back("pi_th" + std::to_string(theta) + "_" + i + j);
                f.policies.push_back(table_policy(
                    f.env,
                    {{{"a_" + i, theta}, {"a_X", 1.0 - theta}}, {{"a_" + j, 1.0}}}));
            }
    // E-group tied above D-group, then pi_B above pi_A
    const int e0 = 4, d0 = 3;
    std::vector<int> e_group{e0}, d_group{d0};
    for (std::size_t k = 5; k < f.policy_names.size(); k++) {
        if (f.policy_names[k].back() == 'E') e_group.push_back(static_cast<int>(k));
        else d_group.push_back(static_cast<int>(k));
    }
    for (std::size_t k = 1; k < e_group.size(); k++)
        f.target.pairs.push_back({e_group[0], e_group[k], Rel::Equal});
    for (std::size_t k = 1; k < d_group.size(); k++)
        f.target.pairs.push_back({d_group[0], d_group[k], Rel::Equal});
    f.target.pairs.push_back({e0, d0, Rel::StrictlyGreater});
    f.target.pairs.push_back({d0, 1, Rel::StrictlyGreater}); // pi_B
    f.target.pairs.push_back({1, 0, Rel::StrictlyGreater});  // pi_B > pi_A

    const RewardFunction r = reward_on(f.env, {{"s0", "a_A", "s0", 1.0},
                                               {"s0", "a_B", "s0", 2.0},
                                               {"s0", "a_C", "s0", 3.0},
                                               {"sA", "a_D", "sA", 4.0},
                                               {"sA", "a_E", "sA", 5.0}});
    f.named_specs.emplace("lar_five", LarSpec{r});

    f.claims = {{Formalism::LAR, true, "mixture-collision-lar"},
                {Formalism::ONMR, false, "mixture-collision-lar"}};
    return f;
}

// --- ex_three_actions_ltl ----------------------------------------------------

SeparationFixture make_ex_three_actions_ltl() {
    SeparationFixture f;
    f.name = "ex_three_actions_ltl";
    f.gamma = 0.5;
    f.env = EnvBuilder({"s0"}, {"a_A", "a_B", "a_C"}).build();

    auto mix = [&](double pa, double pb, double pc) {
        return table_policy(f.env, {{{"a_A", pa}, {"a_B", pb}, {"a_C", pc}}});
    };
    f.policy_names = {"pi_full_uniform", "pi_full_skewed", "pi_A",  "pi_B",
                      "pi_C",            "pi_AB",          "pi_AC", "pi_BC"};
    f.policies = {mix(1.0 / 3, 1.0 / 3, 1.0 / 3),
                  mix(0.5, 0.25, 0.25),
                  mix(1, 0, 0),
                  mix(0, 1, 0),
                  mix(0, 0, 1),
                  mix(0.5, 0.5, 0),
                  mix(0.5, 0, 0.5),
                  mix(0, 0.5, 0.5)};
    f.target.pairs = {{0, 1, Rel::Equal},          {0, 2, Rel::StrictlyGreater},
                      {2, 3, Rel::Equal},          {3, 4, Rel::Equal},
                      {4, 5, Rel::Equal},          {5, 6, Rel::Equal},
                      {6, 7, Rel::Equal}};

    f.named_specs.emplace("ltl_all_three",
                          LtlSpec{parse_ltl("(and (eventually (act a_A))"
                                            " (eventually (act a_B))"
                                            " (eventually (act a_C)))"),
                                  nullptr});

    f.claims = {{Formalism::LTL, true, "mixture-collision-ltl"},
                {Formalism::ONMR, false, "mixture-collision-ltl"}};
    return f;
}

// --- ex_threshold ------------------------------------------------------------

SeparationFixture make_ex_threshold() {
    SeparationFixture f;
    f.name = "ex_threshold";
    f.gamma = 0.99;
    f.env = EnvBuilder({"s0", "sA", "sB"}, {"a_A", "a_B"})
                .arc("s0", "a_A", "sA")
                .arc("s0", "a_B", "sB")
                .build(); // sA, sB absorb under both actions

    auto mix = [&](double p) {
        return table_policy(
            f.env, {{{"a_A", p}, {"a_B", 1.0 - p}}, {{"a_A", 1.0}}, {{"a_A", 1.0}}});
    };
    f.policy_names = {"pi_0", "pi_049", "pi_05", "pi_051", "pi_1"};
    for (double p : {0.0, 0.49, 0.5, 0.51, 1.0}) f.policies.push_back(mix(p));
    f.target.pairs = {{2, 3, Rel::Equal},
                      {3, 4, Rel::Equal},
                      {4, 1, Rel::StrictlyGreater},
                      {1, 0, Rel::Equal}};

    const RewardFunction r = reward_on(f.env, {{"s0", "a_A", "sA", 1.0}});
    f.named_specs.emplace("onmr_threshold",
                          OnmrSpec{r, builtin_scalar_fn("threshold(0.5)"), f.gamma});
    f.named_specs.emplace("rrl_entropy",
                          RrlSpec{RewardFunction::zeros(3, 2), 1.0,
                                  builtin_regularizer("entropy"), f.gamma});

    f.claims = {{Formalism::ONMR, true, "expectation-linearity"},
                {Formalism::RRL, true, "expectation-linearity"},
                {Formalism::FTR, false, "expectation-linearity"}};
    return f;
}

// --- ex_unvisited ------------------------------------------------------------

SeparationFixture make_ex_unvisited() {
    SeparationFixture f;
    f.name = "ex_unvisited";
    f.gamma = 0.9;
    f.env = EnvBuilder({"s0", "sA"}, {"a_A", "a_B", "a_C", "a_D"})
                .arc("s0", "a_A", "s0")
                .arc("s0", "a_B", "sA")
                .arc("sA", "a_C", "sA")
                .arc("sA", "a_D", "sA")
                .build();

    f.policy_names = {"pi_1", "pi_2"};
    f.policies = {table_policy(f.env, {{{"a_A", 1.0}}, {{"a_C", 1.0}}}),
                  table_policy(f.env, {{{"a_A", 1.0}}, {{"a_D", 1.0}}})};
    f.target.pairs = {{0, 1, Rel::StrictlyGreater}};

    f.named_specs.emplace("fpr_match_pi1", FprSpec{indicator_policy_fn(f.policies[0])});
    f.named_specs.emplace(
        "gomorl_delta",
        GomorlSpec{build_delta_reward_basis(f.env), f.gamma, lexicographic_preorder()});

    f.claims = {{Formalism::FPR, true, "unvisited-blindness"},
                {Formalism::GOMORL, false, "unvisited-blindness"}};
    return f;
}

// --- ex_lex ------------------------------------------------------------------

SeparationFixture make_ex_lex() {
    SeparationFixture f;
    f.name = "ex_lex";
    f.gamma = 0.99;
    f.env = EnvBuilder({"s0", "sA", "sB"}, {"a_A", "a_B", "a_C", "a_D", "a_E"})
                .arc("s0", "a_A", "sA")
                .arc("s0", "a_C", "sA")
                .arc("sA", "a_B", "sB")
                .arc("sA", "a_D", "sB")
                .arc("sB", "a_E", "sB")
                .build();

    auto pol = [&](double p, double q) {
        return table_policy(f.env, {{{"a_A", p}, {"a_C", 1.0 - p}},
                                    {{"a_B", q}, {"a_D", 1.0 - q}},
                                    {{"a_E", 1.0}}});
    };
    f.policy_names = {"pi_10", "pi_11", "pi_half_high", "pi_half_half", "pi_01"};
    f.policies = {pol(1.0, 0.0), pol(1.0, 1.0), pol(0.5, 0.99), pol(0.5, 0.5), pol(0.0, 1.0)};
    // lexicographic on <p, gamma q>
    f.target.pairs = {{1, 0, Rel::StrictlyGreater},
                      {0, 2, Rel::StrictlyGreater},
                      {2, 3, Rel::StrictlyGreater},
                      {3, 4, Rel::StrictlyGreater}};

    const RewardFunction r1 = reward_on(f.env, {{"s0", "a_A", "sA", 1.0}});
    const RewardFunction r2 = reward_on(f.env, {{"sA", "a_B", "sB", 1.0}});
    f.named_specs.emplace("gomorl_lex",
                          GomorlSpec{{r1, r2}, f.gamma, lexicographic_preorder()});

    f.claims = {{Formalism::GOMORL, true, "lexicographic-unrepresentable"},
                {Formalism::FPR, false, "lexicographic-unrepresentable"}};
    return f;
}

// --- ex_three_traj -----------------------------------------------------------

SeparationFixture make_ex_three_traj() {
    SeparationFixture f;
    f.name = "ex_three_traj";
    f.gamma = 0.9;
    f.env = EnvBuilder({"s0", "sA", "sB", "sC"}, {"a_A", "a_B", "a_C"})
                .arc("s0", "a_A", "sA")
                .arc("s0", "a_B", "sB")
                .arc("s0", "a_C", "sC")
                .build(); // sA, sB, sC absorb under every action

    auto pol = [&](double pa, double pb, double pc) {
        return table_policy(f.env, {{{"a_A", pa}, {"a_B", pb}, {"a_C", pc}},
                                    {{"a_A", 1.0}},
                                    {{"a_A", 1.0}},
                                    {{"a_A", 1.0}}});
    };
    f.policy_names = {"pi_det_A", "pi_det_B", "pi_det_C", "pi_two_AB",
                      "pi_two_AC", "pi_two_BC", "pi_full"};
    f.policies = {pol(1, 0, 0),     pol(0, 1, 0),     pol(0, 0, 1),    pol(0.5, 0.5, 0),
                  pol(0.5, 0, 0.5), pol(0, 0.5, 0.5), pol(1.0 / 3, 1.0 / 3, 1.0 / 3)};
    f.target.pairs = {{0, 1, Rel::Equal},          {1, 2, Rel::Equal},
                      {0, 3, Rel::StrictlyGreater}, {3, 4, Rel::Equal},
                      {4, 5, Rel::Equal},          {3, 6, Rel::StrictlyGreater}};

    f.named_specs.emplace("rrl_support",
                          RrlSpec{RewardFunction::zeros(4, 3), -1.0,
                                  builtin_regularizer("support-count"), f.gamma});

    f.claims = {{Formalism::RRL, true, "mixture-collision-rrl"},
                {Formalism::ONMR, false, "mixture-collision-rrl"}};
    return f;
}

// --- ex_two_cycles -----------------------------------------------------------

SeparationFixture make_ex_two_cycles() {
    SeparationFixture f;
    f.name = "ex_two_cycles";
    f.gamma = 0.5;
    f.env = EnvBuilder({"s0", "sA"}, {"a_A", "a_B", "a_C", "a_D"})
                .arc("s0", "a_A", "sA")
                .arc("s0", "a_B", "sA")
                .arc("sA", "a_C", "s0")
                .arc("sA", "a_D", "sA")
                .initial({{"s0", 0.5}, {"sA", 0.5}})
                .build();

    auto pol = [&](const std::string& at0, const std::string& at1) {
        return table_policy(f.env, {{{at0, 1.0}}, {{at1, 1.0}}});
    };
    f.policy_names = {"pi_AD", "pi_BD", "pi_AC", "pi_BC"};
    f.policies = {pol("a_A", "a_D"), pol("a_B", "a_D"), pol("a_A", "a_C"), pol("a_B", "a_C")};
    f.target.pairs = {{0, 1, Rel::Equal},
                      {1, 2, Rel::StrictlyGreater},
                      {2, 3, Rel::StrictlyGreater}};

    const RewardFunction r = reward_on(f.env, {{"s0", "a_A", "sA", 1.0},
                                               {"s0", "a_B", "sA", 0.0},
                                               {"sA", "a_C", "s0", 0.0},
                                               {"sA", "a_D", "sA", 1.0}});
    f.named_specs.emplace("lar_cycles", LarSpec{r});

    f.claims = {{Formalism::LAR, true, "cycle-average-coupling"},
                {Formalism::MR, false, "cycle-average-coupling"},
                {Formalism::RRL, false, "cycle-average-coupling"}};
    return f;
}

// --- ex_rm_counter -----------------------------------------------------------

SeparationFixture make_ex_rm_counter() {
    SeparationFixture f;
    f.name = "ex_rm_counter";
    f.gamma = 0.99;
    f.env = EnvBuilder({"s0"}, {"a_A", "a_B", "a_C"}).build();

    auto mix = [&](double pa, double pb, double pc) {
        return table_policy(f.env, {{{"a_A", pa}, {"a_B", pb}, {"a_C", pc}}});
    };
    f.policy_names = {"pi_full_uniform", "pi_full_skewed", "pi_A",  "pi_B",
                      "pi_C",            "pi_AB",          "pi_AC", "pi_BC"};
    f.policies = {mix(1.0 / 3, 1.0 / 3, 1.0 / 3),
                  mix(0.5, 0.25, 0.25),
                  mix(1, 0, 0),
                  mix(0, 1, 0),
                  mix(0, 0, 1),
                  mix(0.5, 0.5, 0),
                  mix(0.5, 0, 0.5),
                  mix(0, 0.5, 0.5)};
    // every full-support policy above every partial one; partials tied at zero
    f.target.pairs = {{0, 2, Rel::StrictlyGreater}, {0, 5, Rel::StrictlyGreater},
                      {1, 2, Rel::StrictlyGreater}, {1, 5, Rel::StrictlyGreater},
                      {2, 3, Rel::Equal},          {3, 4, Rel::Equal},
                      {5, 6, Rel::Equal},          {6, 7, Rel::Equal}};

    {
        // machine states: one per subset of actions seen, then a frozen end state
        RewardMachine m;
        m.machine_states = {"u_0", "u_A", "u_B", "u_C", "u_AB", "u_AC", "u_BC", "u_ABC", "u_end"};
        m.start = 0;
        auto subset_of = [](int u) -> int {
            switch (u) {
            case 0: return 0;            // {}
            case 1: return 1;            // {A}
            case 2: return 2;            // {B}
            case 3: return 4;            // {C}
            case 4: return 3;            // {A,B}
            case 5: return 5;            // {A,C}
            case 6: return 6;            // {B,C}
            default: return 7;           // {A,B,C}
            }
        };
        auto state_of = [](int subset) -> int {
            switch (subset) {
            case 0: return 0;
            case 1: return 1;
            case 2: return 2;
            case 4: return 3;
            case 3: return 4;
            case 5: return 5;
            case 6: return 6;
            default: return 7;
            }
        };
        const int n_u = 9;
        m.delta_u.assign(n_u, std::vector<std::vector<std::vector<int>>>(
                                  1, std::vector<std::vector<int>>(3, std::vector<int>(1, 0))));
        for (int u = 0; u < n_u; u++)
            for (int a = 0; a < 3; a++) {
                int to;
                if (u == 7 || u == 8) {
                    to = 8; // after paying once, freeze
                } else {
                    to = state_of(subset_of(u) | (1 << a));
                }
                m.delta_u[u][0][a][0] = to;
            }
        RewardFunction one = RewardFunction::zeros(1, 3);
        for (int a = 0; a < 3; a++) one.values[0][a][0] = 1.0;
        const RewardFunction zero = RewardFunction::zeros(1, 3);
        m.delta_r.assign(n_u, std::vector<RewardFunction>(n_u, zero));
        for (int u = 0; u < n_u; u++) m.delta_r[u][7] = one;
        m.gamma = f.gamma;
        f.named_specs.emplace("rm_counter", RmSpec{std::move(m)});
    }

    f.claims = {{Formalism::RM, true, "mixture-collision-rm"},
                {Formalism::ONMR, false, "mixture-collision-rm"}};
    return f;
}

} // namespace

const std::vector<SeparationFixture>& fixtures() {
    static const std::vector<SeparationFixture> all = [] {
        std::vector<SeparationFixture> v;
        v.push_back(make_ex_loop());
        v.push_back(make_ex_two_paths());
        v.push_back(make_ex_single_state());
        v.push_back(make_ex_xor());
        v.push_back(make_ex_five_actions());
        v.push_back(make_ex_three_actions_ltl());
        v.push_back(make_ex_threshold());
        v.push_back(make_ex_unvisited());
        v.push_back(make_ex_lex());
        v.push_back(make_ex_three_traj());
        v.push_back(make_ex_two_cycles());
        v.push_back(make_ex_rm_counter());
        return v;
    }();
    // self-validate closed-form values and target orderings once; the LP,
    // continuity and witness machinery runs in run_separation
    static std::once_flag validated;
    std::call_once(validated, [] {
        for (const SeparationFixture& f : all) {
            const SeparationReport report = run_separation_impl(f, /*full=*/false);
            for (const CheckResult& c : report.checks)
                if (!c.pass)
                    throw ValidationError("fixture " + f.name + " failed self-validation: " +
                                          c.claim + " expected " + c.expected + " computed " +
                                          c.computed);
        }
    });
    return all;
}

const SeparationFixture& fixture(const std::string& name) {
    for (const SeparationFixture& f : fixtures())
        if (f.name == name) return f;
    throw UnknownFixture("unknown fixture: " + name);
}

} // namespace objspec
