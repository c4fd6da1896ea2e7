#include "objspec/evaluate.hpp"

#include <cmath>
#include <random>

namespace objspec {

Formalism formalism_of(const ObjectiveSpec& spec) {
    return static_cast<Formalism>(spec.index());
}

std::string to_string(Formalism f) {
    static const char* names[kFormalismCount] = {"MR",   "LAR",  "LTL",  "RM",  "INMR", "IMORL",
                                                 "FTR",  "RRL",  "ONMR", "OMORL", "FOMR",
                                                 "FTLR", "FPR",  "OMO",  "TLO",  "GOMORL", "PO"};
    return names[static_cast<int>(f)];
}

Formalism formalism_from_string(const std::string& name) {
    for (int i = 0; i < kFormalismCount; i++)
        if (to_string(static_cast<Formalism>(i)) == name) return static_cast<Formalism>(i);
    throw ValidationError("unknown formalism name: " + name);
}

bool has_scalar_eval(Formalism f) {
    switch (f) {
    case Formalism::OMO:
    case Formalism::TLO:
    case Formalism::GOMORL:
    case Formalism::PO: return false;
    default: return true;
    }
}

bool is_trajectory_formalism(Formalism f) {
    return f == Formalism::FTR || f == Formalism::INMR || f == Formalism::IMORL;
}

double eval_rrl(const Environment& env, const Policy& policy, const RewardFunction& reward,
                double alpha, const ActionDistFn& regularizer, double gamma) {
    validate_policy(env, policy);
    check_reward_shape(env, reward);
    // J = <m, R> - alpha * sum_s d(s) F[pi(s)]
    double j = eval_mr(env, policy, reward, gamma);
    if (alpha != 0.0) {
        const Eigen::VectorXd d = discounted_visitation(env, policy, gamma);
        for (std::size_t s = 0; s < env.n_states(); s++)
            j -= alpha * d(static_cast<int>(s)) * regularizer(policy.action_probs[s]);
    }
    return j;
}

double eval_onmr(const Environment& env, const Policy& policy, const RewardFunction& reward,
                 const ScalarFn& wrapper, double gamma) {
    return wrapper(eval_mr(env, policy, reward, gamma));
}

std::vector<double> policy_eval_vector(const Environment& env, const Policy& policy,
                                       const std::vector<RewardFunction>& rewards, double gamma) {
    if (rewards.empty()) throw DimensionMismatch("reward vector must have k >= 1 components");
    // share the occupancy measure across components
    const OccupancyMeasure m = occupancy_measure(env, policy, gamma);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    std::vector<double> out;
    out.reserve(rewards.size());
    for (const RewardFunction& r : rewards) {
        check_reward_shape(env, r);
        double j = 0.0;
        for (int s = 0; s < n; s++)
            for (int ai = 0; ai < a; ai++)
                for (int s2 = 0; s2 < n; s2++) {
                    const double mass = m.at(s, ai, s2);
                    if (mass != 0.0) j += mass * r.at(s, ai, s2);
                }
        out.push_back(j);
    }
    return out;
}

double eval_omorl(const Environment& env, const Policy& policy,
                  const std::vector<RewardFunction>& rewards, const VectorFn& wrapper,
                  double gamma) {
    return wrapper(policy_eval_vector(env, policy, rewards, gamma));
}

double eval_fomr(const Environment& env, const Policy& policy, const OccupancyFn& f,
                 double gamma) {
    return f(occupancy_measure(env, policy, gamma));
}

Ordering gomorl_compare(const std::vector<double>& v1, const std::vector<double>& v2,
                        const VectorPreorder& preorder) {
    if (v1.size() != v2.size())
        throw DimensionMismatch("policy evaluation vectors have different lengths");
    return preorder(v1, v2);
}

namespace {

double view_return(const TrajectoryView& view, const RewardFunction& reward, double gamma) {
    double g = 0.0;
    double disc = 1.0;
    for (const Transition& x : view.stem) {
        g += disc * reward.at(x.s, x.a, x.s2);
        disc *= gamma;
    }
    if (!view.cycle.empty()) {
        double cycle_sum = 0.0;
        double cdisc = 1.0;
        for (const Transition& x : view.cycle) {
            cycle_sum += cdisc * reward.at(x.s, x.a, x.s2);
            cdisc *= gamma;
        }
        g += disc * cycle_sum / (1.0 - std::pow(gamma, static_cast<double>(view.cycle.size())));
    }
    return g;
}

double value_on_view(const ObjectiveSpec& spec, const TrajectoryView& view) {
    switch (formalism_of(spec)) {
    case Formalism::FTR: return std::get<FtrSpec>(spec).f(view);
    case Formalism::INMR: {
        const auto& s = std::get<InmrSpec>(spec);
        return s.wrapper(view_return(view, s.reward, s.gamma));
    }
    case Formalism::IMORL: {
        const auto& s = std::get<ImorlSpec>(spec);
        std::vector<double> g;
        g.reserve(s.rewards.size());
        for (const RewardFunction& r : s.rewards) g.push_back(view_return(view, r, s.gamma));
        return s.wrapper(g);
    }
    default: throw DimensionMismatch("not a trajectory formalism");
    }
}

double reward_bound(const ObjectiveSpec& spec) {
    switch (formalism_of(spec)) {
    case Formalism::INMR: return std::get<InmrSpec>(spec).reward.max_abs();
    case Formalism::IMORL: {
        double m = 0.0;
        for (const auto& r : std::get<ImorlSpec>(spec).rewards) m = std::max(m, r.max_abs());
        return m;
    }
    default: return 0.0;
    }
}

double spec_gamma(const ObjectiveSpec& spec) {
    switch (formalism_of(spec)) {
    case Formalism::INMR: return std::get<InmrSpec>(spec).gamma;
    case Formalism::IMORL: return std::get<ImorlSpec>(spec).gamma;
    default: return 0.0;
    }
}

} // namespace

double eval_trajectory_exact(const Environment& env, const Policy& policy,
                             const ObjectiveSpec& spec) {
    if (!is_trajectory_formalism(formalism_of(spec)))
        throw DimensionMismatch("exact trajectory evaluation requires FTR, INMR or IMORL");
    const std::vector<Lasso> lassos = enumerate_lassos(env, policy);
    double j = 0.0;
    for (const Lasso& lasso : lassos) j += lasso.probability * value_on_view(spec, view_of(lasso));
    return j;
}

double eval_trajectory_monte_carlo(const Environment& env, const Policy& policy,
                                   const ObjectiveSpec& spec, const MonteCarlo& mc,
                                   McMetadata* meta) {
    if (!is_trajectory_formalism(formalism_of(spec)))
        throw DimensionMismatch("monte-carlo trajectory evaluation requires FTR, INMR or IMORL");
    validate_policy(env, policy);
    std::mt19937_64 rng(mc.seed);
    auto draw = [&](const std::vector<double>& probs) {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double u = unif(rng);
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); i++) {
            acc += probs[i];
            if (u <= acc) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size()) - 1;
    };

    double sum = 0.0, sumsq = 0.0;
    std::vector<Transition> steps(mc.horizon);
    for (std::size_t k = 0; k < mc.samples; k++) {
        int s = draw(env.initial);
        const int start = s;
        for (std::size_t t = 0; t < mc.horizon; t++) {
            const int a = draw(policy.action_probs[s]);
            const int s2 = draw(env.transition[s][a]);
            steps[t] = {s, a, s2};
            s = s2;
        }
        TrajectoryView view{start, steps, {}};
        const double v = value_on_view(spec, view);
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / static_cast<double>(mc.samples);
    if (meta) {
        const double var =
            std::max(0.0, sumsq / static_cast<double>(mc.samples) - mean * mean);
        meta->std_error = std::sqrt(var / static_cast<double>(mc.samples));
        meta->samples = mc.samples;
        meta->horizon = mc.horizon;
        meta->bias_bound.reset();
        // Truncation bound: the inner return misses at most
        // gamma^H * Rmax / (1 - gamma); a Lipschitz constant for the wrapper
        // carries that through f. Without one the estimate is unbounded-bias.
        const double gamma = spec_gamma(spec);
        const double rmax = reward_bound(spec);
        if (mc.lipschitz && formalism_of(spec) != Formalism::FTR && gamma > 0.0) {
            const double tail =
                std::pow(gamma, static_cast<double>(mc.horizon)) * rmax / (1.0 - gamma);
            meta->bias_bound = *mc.lipschitz * tail;
        }
    }
    return mean;
}

double evaluate(const Environment& env, const Policy& policy, const ObjectiveSpec& spec) {
    switch (formalism_of(spec)) {
    case Formalism::MR: {
        const auto& s = std::get<MrSpec>(spec);
        return eval_mr(env, policy, s.reward, s.gamma);
    }
    case Formalism::LAR: return eval_lar(env, policy, std::get<LarSpec>(spec).reward);
    case Formalism::LTL: {
        const auto& s = std::get<LtlSpec>(spec);
        if (s.monitor) return eval_ltl(env, policy, *s.monitor);
        if (s.formula) return eval_ltl(env, policy, *s.formula);
        throw ValidationError("ltl objective holds neither a formula nor a monitor");
    }
    case Formalism::RM: return eval_rm(env, policy, std::get<RmSpec>(spec).machine);
    case Formalism::INMR:
    case Formalism::IMORL:
    case Formalism::FTR: return eval_trajectory_exact(env, policy, spec);
    case Formalism::RRL: {
        const auto& s = std::get<RrlSpec>(spec);
        return eval_rrl(env, policy, s.reward, s.alpha, s.regularizer, s.gamma);
    }
    case Formalism::ONMR: {
        const auto& s = std::get<OnmrSpec>(spec);
        return eval_onmr(env, policy, s.reward, s.wrapper, s.gamma);
    }
    case Formalism::OMORL: {
        const auto& s = std::get<OmorlSpec>(spec);
        return eval_omorl(env, policy, s.rewards, s.wrapper, s.gamma);
    }
    case Formalism::FOMR: {
        const auto& s = std::get<FomrSpec>(spec);
        return eval_fomr(env, policy, s.f, s.gamma);
    }
    case Formalism::FTLR: {
        const auto& s = std::get<FtlrSpec>(spec);
        return s.f(lottery_certificate(env, policy, s.gamma));
    }
    case Formalism::FPR: return std::get<FprSpec>(spec).j(policy);
    case Formalism::OMO:
    case Formalism::TLO:
    case Formalism::GOMORL:
    case Formalism::PO:
        throw DimensionMismatch("formalism " + to_string(formalism_of(spec)) +
                                " defines an ordering, not a scalar value");
    }
    throw ValidationError("unreachable");
}

Ordering compare(const Environment& env, const Policy& pi1, const Policy& pi2,
                 const ObjectiveSpec& spec) {
    switch (formalism_of(spec)) {
    case Formalism::OMO: {
        const auto& s = std::get<OmoSpec>(spec);
        return s.preorder(occupancy_measure(env, pi1, s.gamma),
                          occupancy_measure(env, pi2, s.gamma));
    }
    case Formalism::TLO: {
        const auto& s = std::get<TloSpec>(spec);
        return s.preorder(lottery_certificate(env, pi1, s.gamma),
                          lottery_certificate(env, pi2, s.gamma));
    }
    case Formalism::GOMORL: {
        const auto& s = std::get<GomorlSpec>(spec);
        return gomorl_compare(policy_eval_vector(env, pi1, s.rewards, s.gamma),
                              policy_eval_vector(env, pi2, s.rewards, s.gamma), s.preorder);
    }
    case Formalism::PO: return std::get<PoSpec>(spec).preorder(pi1, pi2);
    default: return ordering_of(evaluate(env, pi1, spec), evaluate(env, pi2, spec));
    }
}

} // namespace objspec
