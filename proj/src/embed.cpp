#include "objspec/embed.hpp"
#include "objspec/builtins.hpp"

#include <cmath>
#include <memory>

namespace objspec {

const std::vector<EmbedEdge>& supported_embed_edges() {
    static const std::vector<EmbedEdge> edges = {
        {Formalism::MR, Formalism::RM},      {Formalism::MR, Formalism::INMR},
        {Formalism::INMR, Formalism::IMORL}, {Formalism::IMORL, Formalism::FTR},
        {Formalism::MR, Formalism::RRL},     {Formalism::MR, Formalism::ONMR},
        {Formalism::ONMR, Formalism::OMORL}, {Formalism::LAR, Formalism::FTR},
        {Formalism::LTL, Formalism::FTR},    {Formalism::RM, Formalism::FTR},
        {Formalism::FTR, Formalism::FTLR},   {Formalism::FTLR, Formalism::FPR},
        {Formalism::FTLR, Formalism::TLO},   {Formalism::OMORL, Formalism::GOMORL},
        {Formalism::RRL, Formalism::FTLR},   {Formalism::OMORL, Formalism::FTLR},
        {Formalism::FTR, Formalism::INMR},
    };
    return edges;
}

bool is_supported_embed_edge(Formalism source, Formalism target) {
    for (const EmbedEdge& e : supported_embed_edges())
        if (e.source == source && e.target == target) return true;
    return false;
}

double machine_return_on_view(const RewardMachine& machine, const TrajectoryView& view) {
    const double gamma = machine.gamma;
    double total = 0.0;
    double disc = 1.0;
    int u = machine.start;
    for (const Transition& x : view.stem) {
        const int u2 = machine.step(u, x.s, x.a, x.s2);
        total += disc * machine.delta_r[u][u2].at(x.s, x.a, x.s2);
        disc *= gamma;
        u = u2;
    }
    if (view.cycle.empty()) return total;

    // iterate the cycle until (machine state, phase) repeats, then close the
    // geometric tail in one step
    const std::size_t period = view.cycle.size();
    std::vector<int> seen_at(machine.n_machine_states() * period, -1);
    std::vector<double> rewards; // per step since entering the cycle
    std::size_t phase = 0;
    int t = 0;
    int loop_start;
    while (true) {
        const int key = u * static_cast<int>(period) + static_cast<int>(phase);
        if (seen_at[key] >= 0) {
            loop_start = seen_at[key];
            break;
        }
        seen_at[key] = t;
        const Transition& x = view.cycle[phase];
        const int u2 = machine.step(u, x.s, x.a, x.s2);
        rewards.push_back(machine.delta_r[u][u2].at(x.s, x.a, x.s2));
        u = u2;
        phase = (phase + 1) % period;
        t++;
    }
    for (int i = 0; i < loop_start; i++) {
        total += disc * rewards[i];
        disc *= gamma;
    }
    double block = 0.0;
    double bdisc = 1.0;
    for (std::size_t i = loop_start; i < rewards.size(); i++) {
        block += bdisc * rewards[i];
        bdisc *= gamma;
    }
    const int block_len = static_cast<int>(rewards.size()) - loop_start;
    total += disc * block / (1.0 - std::pow(gamma, block_len));
    return total;
}

namespace {

RewardMachine constant_machine(const Environment& env, const RewardFunction& reward,
                               double gamma) {
    const std::size_t n = env.n_states(), a = env.n_actions();
    RewardMachine m;
    m.machine_states = {"u0"};
    m.start = 0;
    m.delta_u.assign(1, std::vector<std::vector<std::vector<int>>>(
                            n, std::vector<std::vector<int>>(a, std::vector<int>(n, 0))));
    m.delta_r.assign(1, std::vector<RewardFunction>(1, reward));
    m.gamma = gamma;
    return m;
}

double view_return(const TrajectoryView& view, const RewardFunction& reward, double gamma) {
    double g = 0.0, disc = 1.0;
    for (const Transition& x : view.stem) {
        g += disc * reward.at(x.s, x.a, x.s2);
        disc *= gamma;
    }
    if (!view.cycle.empty()) {
        double block = 0.0, bdisc = 1.0;
        for (const Transition& x : view.cycle) {
            block += bdisc * reward.at(x.s, x.a, x.s2);
            bdisc *= gamma;
        }
        g += disc * block / (1.0 - std::pow(gamma, static_cast<double>(view.cycle.size())));
    }
    return g;
}

double view_average_reward(const TrajectoryView& view, const RewardFunction& reward) {
    if (!view.cycle.empty()) {
        double sum = 0.0;
        for (const Transition& x : view.cycle) sum += reward.at(x.s, x.a, x.s2);
        return sum / static_cast<double>(view.cycle.size());
    }
    if (view.stem.empty()) return 0.0;
    double sum = 0.0;
    for (const Transition& x : view.stem) sum += reward.at(x.s, x.a, x.s2);
    return sum / static_cast<double>(view.stem.size());
}

/// J of a source objective as a function of the trajectory lottery alone.
LotteryFn lottery_value_of(const ObjectiveSpec& source, const Environment& env) {
    auto env_copy = std::make_shared<Environment>(env);
    auto spec_copy = std::make_shared<ObjectiveSpec>(source);
    return [env_copy, spec_copy](const LotteryCertificate& cert) {
        const Policy pi = policy_from_certificate(*env_copy, cert);
        return evaluate(*env_copy, pi, *spec_copy);
    };
}

} // namespace

ObjectiveSpec embed(const ObjectiveSpec& source, Formalism target, const Environment& env) {
    const Formalism from = formalism_of(source);
    if (!is_supported_embed_edge(from, target))
        throw UnsupportedEdge("no constructive edge " + to_string(from) + " -> " +
                              to_string(target));

    switch (target) {
    case Formalism::RM: {
        const auto& s = std::get<MrSpec>(source);
        return RmSpec{constant_machine(env, s.reward, s.gamma)};
    }
    case Formalism::INMR: {
        if (from == Formalism::MR) {
            const auto& s = std::get<MrSpec>(source);
            return InmrSpec{s.reward, builtin_scalar_fn("identity"), s.gamma};
        }
        // FTR -> INMR: make the return injective, then wrap f around its inverse
        const auto& s = std::get<FtrSpec>(source);
        auto inj = std::make_shared<InjectiveReturn>(build_injective_return(env));
        auto env_copy = std::make_shared<Environment>(env);
        TrajectoryFn f = s.f;
        ScalarFn h = [inj, env_copy, f](double g) {
            const Lasso lasso = decode_return_lasso(g, *env_copy, *inj);
            return f(view_of(lasso));
        };
        return InmrSpec{inj->reward, std::move(h), inj->gamma};
    }
    case Formalism::IMORL: {
        const auto& s = std::get<InmrSpec>(source);
        ScalarFn w = s.wrapper;
        return ImorlSpec{{s.reward},
                         [w](const std::vector<double>& g) { return w(g.at(0)); },
                         s.gamma};
    }
    case Formalism::FTR: {
        switch (from) {
        case Formalism::IMORL: {
            const auto& s = std::get<ImorlSpec>(source);
            auto rewards = std::make_shared<std::vector<RewardFunction>>(s.rewards);
            VectorFn w = s.wrapper;
            const double gamma = s.gamma;
            return FtrSpec{[rewards, w, gamma](const TrajectoryView& view) {
                std::vector<double> g;
                g.reserve(rewards->size());
                for (const RewardFunction& r : *rewards) g.push_back(view_return(view, r, gamma));
                return w(g);
            }};
        }
        case Formalism::LAR: {
            auto reward = std::make_shared<RewardFunction>(std::get<LarSpec>(source).reward);
            return FtrSpec{[reward](const TrajectoryView& view) {
                return view_average_reward(view, *reward);
            }};
        }
        case Formalism::LTL: {
            const auto& s = std::get<LtlSpec>(source);
            MonitorPtr monitor = s.monitor ? s.monitor : compile_ltl(*s.formula);
            auto env_copy = std::make_shared<Environment>(env);
            return FtrSpec{[monitor, env_copy](const TrajectoryView& view) {
                return monitor_accepts_lasso(*env_copy, *monitor, view);
            }};
        }
        case Formalism::RM: {
            auto machine = std::make_shared<RewardMachine>(std::get<RmSpec>(source).machine);
            return FtrSpec{[machine](const TrajectoryView& view) {
                return machine_return_on_view(*machine, view);
            }};
        }
        default: break;
        }
        break;
    }
    case Formalism::RRL: {
        const auto& s = std::get<MrSpec>(source);
        return RrlSpec{s.reward, 0.0, builtin_regularizer("entropy"), s.gamma};
    }
    case Formalism::ONMR: {
        const auto& s = std::get<MrSpec>(source);
        return OnmrSpec{s.reward, builtin_scalar_fn("identity"), s.gamma};
    }
    case Formalism::OMORL: {
        const auto& s = std::get<OnmrSpec>(source);
        ScalarFn w = s.wrapper;
        return OmorlSpec{{s.reward},
                         [w](const std::vector<double>& j) { return w(j.at(0)); },
                         s.gamma};
    }
    case Formalism::FTLR: {
        if (from == Formalism::FTR) {
            // expectation of f over the lottery, reconstructed exactly
            const auto& s = std::get<FtrSpec>(source);
            auto env_copy = std::make_shared<Environment>(env);
            TrajectoryFn f = s.f;
            const double gamma = 0.5; // carrier discount; any value in (0,1) works
            return FtlrSpec{[env_copy, f](const LotteryCertificate& cert) {
                                const Policy pi = policy_from_certificate(*env_copy, cert);
                                double j = 0.0;
                                for (const Lasso& lasso : enumerate_lassos(*env_copy, pi))
                                    j += lasso.probability * f(view_of(lasso));
                                return j;
                            },
                            gamma};
        }
        if (from == Formalism::RRL) {
            const double gamma = std::get<RrlSpec>(source).gamma;
            return FtlrSpec{lottery_value_of(source, env), gamma};
        }
        if (from == Formalism::OMORL) {
            const double gamma = std::get<OmorlSpec>(source).gamma;
            return FtlrSpec{lottery_value_of(source, env), gamma};
        }
        break;
    }
    case Formalism::FPR: {
        const auto& s = std::get<FtlrSpec>(source);
        auto env_copy = std::make_shared<Environment>(env);
        LotteryFn f = s.f;
        const double gamma = s.gamma;
        return FprSpec{[env_copy, f, gamma](const Policy& pi) {
            return f(lottery_certificate(*env_copy, pi, gamma));
        }};
    }
    case Formalism::TLO: {
        const auto& s = std::get<FtlrSpec>(source);
        LotteryFn f = s.f;
        return TloSpec{[f](const LotteryCertificate& a, const LotteryCertificate& b) {
                           return ordering_of(f(a), f(b));
                       },
                       s.gamma};
    }
    case Formalism::GOMORL: {
        const auto& s = std::get<OmorlSpec>(source);
        return GomorlSpec{s.rewards, s.gamma, preorder_from_function(s.wrapper)};
    }
    default: break;
    }
    throw UnsupportedEdge("no constructive edge " + to_string(from) + " -> " +
                          to_string(target));
}

} // namespace objspec
