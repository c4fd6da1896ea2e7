#include "objspec/lp.hpp"
#include "objspec/errors.hpp"

#include <doctest.h>

using namespace objspec;

TEST_CASE("a contradictory strict/equality pair is infeasible") {
    LpProblem p;
    p.n_vars = 2;
    p.bounds = {{-1, 1}, {-1, 1}};
    p.constraints.push_back({{1, 1}, 1e-6, LpConstraint::Kind::Ge});
    p.constraints.push_back({{1, 1}, 0.0, LpConstraint::Kind::Eq});
    CHECK_FALSE(lp_feasible(p).feasible);
}

TEST_CASE("a consistent system returns a point satisfying every row") {
    LpProblem p;
    p.n_vars = 3;
    p.bounds.assign(3, {-1.0, 1.0});
    p.constraints.push_back({{1, 0, 0}, 0.25, LpConstraint::Kind::Ge});
    p.constraints.push_back({{0, 1, 0}, 0.5, LpConstraint::Kind::Ge});
    p.constraints.push_back({{1, 1, 1}, 0.0, LpConstraint::Kind::Eq});
    const LpResult r = lp_feasible(p);
    REQUIRE(r.feasible);
    CHECK(r.x[0] >= 0.25 - 1e-9);
    CHECK(r.x[1] >= 0.5 - 1e-9);
    CHECK(r.x[0] + r.x[1] + r.x[2] == doctest::Approx(0.0).epsilon(1e-9));
    for (double v : r.x) {
        CHECK(v >= -1.0 - 1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
}

TEST_CASE("box bounds alone decide feasibility") {
    LpProblem p;
    p.n_vars = 1;
    p.bounds = {{-1.0, 1.0}};
    p.constraints.push_back({{1}, 2.0, LpConstraint::Kind::Ge}); // beyond the box
    CHECK_FALSE(lp_feasible(p).feasible);
    p.constraints[0].rhs = 0.75;
    CHECK(lp_feasible(p).feasible);
}

TEST_CASE("an empty constraint set is feasible at the box") {
    LpProblem p;
    p.n_vars = 2;
    p.bounds = {{-0.5, 0.5}, {0.0, 0.0}};
    const LpResult r = lp_feasible(p);
    REQUIRE(r.feasible);
    CHECK(r.x[1] == doctest::Approx(0.0));
}

TEST_CASE("mismatched widths are reported as solver failures") {
    LpProblem p;
    p.n_vars = 2;
    p.bounds = {{-1, 1}, {-1, 1}};
    p.constraints.push_back({{1}, 0.0, LpConstraint::Kind::Ge});
    CHECK_THROWS_AS(lp_feasible(p), LPSolverFailure);
}

TEST_CASE("negative right-hand sides convert correctly") {
    LpProblem p;
    p.n_vars = 2;
    p.bounds = {{-1, 1}, {-1, 1}};
    // x - y >= -1.5 is satisfiable; x - y >= 2.5 is not within the box
    p.constraints.push_back({{1, -1}, -1.5, LpConstraint::Kind::Ge});
    CHECK(lp_feasible(p).feasible);
    p.constraints[0].rhs = 2.5;
    CHECK_FALSE(lp_feasible(p).feasible);
}
