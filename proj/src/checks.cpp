#include "objspec/separations.hpp"

#include <cmath>
#include <limits>

namespace objspec {

std::vector<double> default_gamma_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 19; i++) grid.push_back(0.05 * i);
    return grid;
}

namespace {

void check_constraint(const OrderingConstraint& constraint, std::size_t n_policies) {
    using Rel = OrderingConstraint::Relation;
    for (const auto& pair : constraint.pairs) {
        if (pair.i < 0 || pair.j < 0 || pair.i >= static_cast<int>(n_policies) ||
            pair.j >= static_cast<int>(n_policies))
            throw DimensionMismatch("ordering constraint references an unknown policy index");
        if (pair.i == pair.j && pair.rel == Rel::StrictlyGreater)
            throw ValidationError("ordering constraint demands a policy exceed itself");
        for (const auto& other : constraint.pairs) {
            const bool forward = other.i == pair.i && other.j == pair.j;
            const bool reversed = other.i == pair.j && other.j == pair.i;
            const bool conflict =
                (forward && other.rel != pair.rel) ||
                (reversed && (other.rel == Rel::StrictlyGreater &&
                              pair.rel == Rel::StrictlyGreater)) ||
                (reversed && other.rel != pair.rel);
            if (conflict)
                throw ValidationError("ordering constraint lists a pair with conflicting relations");
        }
    }
}

RewardFunction reward_from_flat(const Environment& env, const std::vector<double>& flat) {
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    RewardFunction r = RewardFunction::zeros(n, a);
    std::size_t idx = 0;
    for (int s = 0; s < n; s++)
        for (int ai = 0; ai < a; ai++)
            for (int s2 = 0; s2 < n; s2++) r.at(s, ai, s2) = flat[idx++];
    return r;
}

} // namespace

FeasibilityResult mr_lp_check(const Environment& env, const std::vector<Policy>& policies,
                              const OrderingConstraint& constraint,
                              const std::vector<double>& gamma_grid, double epsilon) {
    if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");
    check_constraint(constraint, policies.size());
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    const int nvars = n * a * n;

    FeasibilityResult result;
    for (double gamma : gamma_grid) {
        std::vector<OccupancyMeasure> ms;
        ms.reserve(policies.size());
        for (const Policy& pi : policies) ms.push_back(occupancy_measure(env, pi, gamma));

        LpProblem problem;
        problem.n_vars = nvars;
        problem.bounds.assign(nvars, {-1.0, 1.0});
        for (const auto& pair : constraint.pairs) {
            LpConstraint row;
            row.coeffs.resize(nvars);
            for (int k = 0; k < nvars; k++)
                row.coeffs[k] = ms[pair.i].values[k] - ms[pair.j].values[k];
            if (pair.rel == OrderingConstraint::Relation::StrictlyGreater) {
                row.kind = LpConstraint::Kind::Ge;
                row.rhs = epsilon;
            } else {
                row.kind = LpConstraint::Kind::Eq;
                row.rhs = 0.0;
            }
            problem.constraints.push_back(std::move(row));
        }

        const LpResult lp = lp_feasible(problem);
        result.per_gamma.emplace_back(gamma, lp.feasible);
        if (!lp.feasible) continue;

        // accept only a witness that re-verifies through the evaluator
        const RewardFunction witness = reward_from_flat(env, lp.x);
        std::vector<double> j;
        j.reserve(policies.size());
        for (const Policy& pi : policies) j.push_back(eval_mr(env, pi, witness, gamma));
        double margin = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (const auto& pair : constraint.pairs) {
            const double diff = j[pair.i] - j[pair.j];
            if (pair.rel == OrderingConstraint::Relation::StrictlyGreater) {
                margin = std::min(margin, diff);
                if (diff < epsilon / 2.0) ok = false;
            } else if (std::abs(diff) > epsilon / 2.0) {
                ok = false;
            }
        }
        if (!ok)
            throw LPSolverFailure("LP witness failed re-verification through eval_mr at gamma=" +
                                  std::to_string(gamma));
        result.feasible = true;
        result.gamma = gamma;
        result.witness = witness;
        result.margin = margin;
        return result;
    }
    return result;
}

FeasibilityResult rrl_lp_check(const Environment& env, const std::vector<Policy>& policies,
                               const OrderingConstraint& constraint,
                               const std::vector<std::vector<double>>& f_support,
                               const std::vector<double>& gamma_grid, double epsilon) {
    if (epsilon <= 0.0) throw ValidationError("epsilon must be positive");
    check_constraint(constraint, policies.size());
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    const int n_reward = n * a * n;
    const int n_phi = static_cast<int>(f_support.size());
    const int nvars = n_reward + n_phi;

    auto support_index = [&](const std::vector<double>& dist) {
        for (int k = 0; k < n_phi; k++) {
            bool same = true;
            for (int ai = 0; ai < a; ai++)
                if (std::abs(f_support[k][ai] - dist[ai]) > 1e-12) {
                    same = false;
                    break;
                }
            if (same) return k;
        }
        throw ValidationError("policy uses an action distribution outside F_support");
    };

    FeasibilityResult result;
    for (double gamma : gamma_grid) {
        std::vector<OccupancyMeasure> ms;
        std::vector<Eigen::VectorXd> ds;
        for (const Policy& pi : policies) {
            ms.push_back(occupancy_measure(env, pi, gamma));
            ds.push_back(discounted_visitation(env, pi, gamma));
        }

        // J_i as a linear functional of (R, phi)
        auto value_coeffs = [&](int i) {
            std::vector<double> c(nvars, 0.0);
            for (int k = 0; k < n_reward; k++) c[k] = ms[i].values[k];
            for (int s = 0; s < n; s++)
                c[n_reward + support_index(policies[i].action_probs[s])] -= ds[i](s);
            return c;
        };

        LpProblem problem;
        problem.n_vars = nvars;
        problem.bounds.assign(nvars, {-1.0, 1.0});
        for (const auto& pair : constraint.pairs) {
            const std::vector<double> ci = value_coeffs(pair.i);
            const std::vector<double> cj = value_coeffs(pair.j);
            LpConstraint row;
            row.coeffs.resize(nvars);
            for (int k = 0; k < nvars; k++) row.coeffs[k] = ci[k] - cj[k];
            if (pair.rel == OrderingConstraint::Relation::StrictlyGreater) {
                row.kind = LpConstraint::Kind::Ge;
                row.rhs = epsilon;
            } else {
                row.kind = LpConstraint::Kind::Eq;
                row.rhs = 0.0;
            }
            problem.constraints.push_back(std::move(row));
        }

        const LpResult lp = lp_feasible(problem);
        result.per_gamma.emplace_back(gamma, lp.feasible);
        if (!lp.feasible) continue;

        const RewardFunction witness = reward_from_flat(env, lp.x);
        std::vector<double> phi(lp.x.begin() + n_reward, lp.x.end());
        // re-verify through eval_rrl with the witness regulariser (alpha = 1)
        auto regularizer = [&, phi](const std::vector<double>& dist) {
            return phi[support_index(dist)];
        };
        std::vector<double> j;
        for (const Policy& pi : policies)
            j.push_back(eval_rrl(env, pi, witness, 1.0, regularizer, gamma));
        double margin = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (const auto& pair : constraint.pairs) {
            const double diff = j[pair.i] - j[pair.j];
            if (pair.rel == OrderingConstraint::Relation::StrictlyGreater) {
                margin = std::min(margin, diff);
                if (diff < epsilon / 2.0) ok = false;
            } else if (std::abs(diff) > epsilon / 2.0) {
                ok = false;
            }
        }
        if (!ok)
            throw LPSolverFailure("LP witness failed re-verification through eval_rrl at gamma=" +
                                  std::to_string(gamma));
        result.feasible = true;
        result.gamma = gamma;
        result.witness = witness;
        result.regularizer_witness = std::move(phi);
        result.margin = margin;
        return result;
    }
    return result;
}

namespace {

/// Reward magnitude and discount used for the continuity tolerance shape.
std::pair<double, double> scale_of(const ObjectiveSpec& spec) {
    switch (formalism_of(spec)) {
    case Formalism::MR: {
        const auto& s = std::get<MrSpec>(spec);
        return {s.reward.max_abs(), s.gamma};
    }
    case Formalism::RM: {
        const auto& s = std::get<RmSpec>(spec);
        double c = 0.0;
        for (const auto& row : s.machine.delta_r)
            for (const auto& r : row) c = std::max(c, r.max_abs());
        return {c, s.machine.gamma};
    }
    case Formalism::LAR: return {std::get<LarSpec>(spec).reward.max_abs(), 0.0};
    case Formalism::LTL: return {1.0, 0.0};
    case Formalism::RRL: {
        const auto& s = std::get<RrlSpec>(spec);
        return {std::max(1.0, s.reward.max_abs()), s.gamma};
    }
    default: return {1.0, 0.0};
    }
}

} // namespace

ContinuityReport continuity_probe(const Environment& env,
                                  const std::vector<std::pair<double, Policy>>& family,
                                  const ObjectiveSpec& spec, const Policy& limit_policy) {
    if (family.empty()) throw ValidationError("continuity probe needs a nonempty family");
    for (std::size_t i = 1; i < family.size(); i++)
        if (!(family[i].first < family[i - 1].first))
            throw ValidationError("alphas must be strictly descending");
    if (family.back().first < 1e-8)
        throw ValidationError("alphas must stay at or above 1e-8");

    ContinuityReport report;
    for (const auto& [alpha, pi] : family) {
        report.alphas.push_back(alpha);
        report.values.push_back(evaluate(env, pi, spec));
    }
    report.limit_value = evaluate(env, limit_policy, spec);
    const auto [c, gamma] = scale_of(spec);
    const double alpha_min = family.back().first;
    report.tolerance = 10.0 * alpha_min * std::max(c, 1e-12) / ((1.0 - gamma) * (1.0 - gamma));
    report.match = std::abs(report.values.back() - report.limit_value) <= report.tolerance;
    return report;
}

} // namespace objspec
