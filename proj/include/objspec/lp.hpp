#pragma once

#include <vector>

namespace objspec {

/// One linear row: coeffs . x  (>= | =)  rhs.
struct LpConstraint {
    enum class Kind { Ge, Eq };
    std::vector<double> coeffs;
    double rhs = 0.0;
    Kind kind = Kind::Ge;
};

struct LpProblem {
    int n_vars = 0;
    std::vector<LpConstraint> constraints;
    std::vector<std::pair<double, double>> bounds; ///< per-variable [lo, hi]
};

struct LpResult {
    bool feasible = false;
    std::vector<double> x; ///< a feasible point when feasible
};

/**
 * Phase-1 simplex feasibility test (dense, Bland's rule). Built for the tiny
 * reward-design systems this project solves; every Feasible answer is meant
 * to be re-verified through the exact evaluators by the caller.
 */
LpResult lp_feasible(const LpProblem& problem);

} // namespace objspec
