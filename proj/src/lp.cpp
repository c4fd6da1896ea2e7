#include "objspec/lp.hpp"
#include "objspec/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace objspec {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;

} // namespace

LpResult lp_feasible(const LpProblem& problem) {
    const int n = problem.n_vars;
    if (static_cast<int>(problem.bounds.size()) != n)
        throw LPSolverFailure("bounds do not match variable count");
    for (const auto& c : problem.constraints)
        if (static_cast<int>(c.coeffs.size()) != n)
            throw LPSolverFailure("constraint row has wrong width");

    // Shift x = lo + y with y in [0, hi - lo]; upper bounds become <= rows.
    std::vector<double> lo(n), width(n);
    for (int i = 0; i < n; i++) {
        lo[i] = problem.bounds[i].first;
        width[i] = problem.bounds[i].second - problem.bounds[i].first;
        if (width[i] < 0.0) return {false, {}};
    }

    struct Row {
        std::vector<double> a; ///< over y variables
        double rhs;
        enum class Kind { Le, Ge, Eq } kind;
    };
    std::vector<Row> rows;
    for (const auto& c : problem.constraints) {
        Row row;
        row.a.assign(c.coeffs.begin(), c.coeffs.end());
        row.rhs = c.rhs;
        for (int i = 0; i < n; i++) row.rhs -= c.coeffs[i] * lo[i];
        row.kind = c.kind == LpConstraint::Kind::Eq ? Row::Kind::Eq : Row::Kind::Ge;
        rows.push_back(std::move(row));
    }
    for (int i = 0; i < n; i++) {
        Row row;
        row.a.assign(n, 0.0);
        row.a[i] = 1.0;
        row.rhs = width[i];
        row.kind = Row::Kind::Le;
        rows.push_back(std::move(row));
    }

    // Normalize signs so every rhs >= 0; Ge rows with nonpositive rhs flip to Le.
    for (Row& row : rows) {
        if (row.rhs < 0.0) {
            for (double& v : row.a) v = -v;
            row.rhs = -row.rhs;
            if (row.kind == Row::Kind::Ge) row.kind = Row::Kind::Le;
            else if (row.kind == Row::Kind::Le) row.kind = Row::Kind::Ge;
        }
    }

    const int m = static_cast<int>(rows.size());
    // columns: y (n) | slack/surplus (one per row) | artificials (Ge/Eq rows)
    int n_art = 0;
    for (const Row& row : rows)
        if (row.kind != Row::Kind::Le) n_art++;
    const int total = n + m + n_art;

    std::vector<std::vector<double>> tab(m, std::vector<double>(total + 1, 0.0));
    std::vector<int> basis(m, -1);
    int art_col = n + m;
    for (int r = 0; r < m; r++) {
        for (int i = 0; i < n; i++) tab[r][i] = rows[r].a[i];
        tab[r][total] = rows[r].rhs;
        const int sc = n + r;
        switch (rows[r].kind) {
        case Row::Kind::Le:
            tab[r][sc] = 1.0;
            basis[r] = sc;
            break;
        case Row::Kind::Ge:
            tab[r][sc] = -1.0;
            tab[r][art_col] = 1.0;
            basis[r] = art_col++;
            break;
        case Row::Kind::Eq:
            // slack column stays zero; artificial carries the row
            tab[r][art_col] = 1.0;
            basis[r] = art_col++;
            break;
        }
    }

    // objective: minimize the sum of artificials; express the cost row in
    // terms of nonbasic variables by eliminating the artificial basics
    std::vector<double> cost(total + 1, 0.0);
    for (int c = n + m; c < total; c++) cost[c] = 1.0;
    for (int r = 0; r < m; r++) {
        if (basis[r] >= n + m) {
            for (int c = 0; c <= total; c++) cost[c] -= tab[r][c];
        }
    }

    const int max_iters = 200 * (total + 1);
    for (int iter = 0; iter < max_iters; iter++) {
        // Bland: smallest-index entering column with negative reduced cost
        int enter = -1;
        for (int c = 0; c < total; c++) {
            if (cost[c] < -kPivotTol) {
                enter = c;
                break;
            }
        }
        if (enter < 0) break;
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; r++) {
            if (tab[r][enter] > kPivotTol) {
                const double ratio = tab[r][total] / tab[r][enter];
                if (ratio < best_ratio - kPivotTol ||
                    (std::abs(ratio - best_ratio) <= kPivotTol &&
                     (leave < 0 || basis[r] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) throw LPSolverFailure("phase-1 objective unbounded (internal error)");
        // pivot
        const double piv = tab[leave][enter];
        for (int c = 0; c <= total; c++) tab[leave][c] /= piv;
        for (int r = 0; r < m; r++) {
            if (r == leave) continue;
            const double f = tab[r][enter];
            if (f == 0.0) continue;
            for (int c = 0; c <= total; c++) tab[r][c] -= f * tab[leave][c];
        }
        const double fc = cost[enter];
        if (fc != 0.0)
            for (int c = 0; c <= total; c++) cost[c] -= fc * tab[leave][c];
        basis[leave] = enter;
    }

    const double objective = -cost[total];
    if (objective > kFeasTol) return {false, {}};

    std::vector<double> y(n, 0.0);
    for (int r = 0; r < m; r++)
        if (basis[r] < n) y[basis[r]] = tab[r][total];
    LpResult out;
    out.feasible = true;
    out.x.resize(n);
    for (int i = 0; i < n; i++) {
        double v = lo[i] + y[i];
        v = std::max(problem.bounds[i].first, std::min(problem.bounds[i].second, v));
        out.x[i] = v;
    }
    return out;
}

} // namespace objspec
