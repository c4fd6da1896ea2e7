#pragma once

#include "objspec/mdp.hpp"
#include "objspec/trajectory.hpp"

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace objspec {

/**
 * Formulas over atomic propositions drawn from environment transitions.
 * Atoms name a full transition triple, or a state / action shorthand that
 * holds for any triple containing it.
 */
class LtlFormula {
public:
    struct TripleAtom {
        std::string s, a, s2;
    };
    struct StateAtom {
        std::string s;
    };
    struct ActionAtom {
        std::string a;
    };
    struct True {};
    struct Not {
        std::shared_ptr<const LtlFormula> arg;
    };
    struct And {
        std::shared_ptr<const LtlFormula> lhs, rhs;
    };
    struct Or {
        std::shared_ptr<const LtlFormula> lhs, rhs;
    };
    struct Implies {
        std::shared_ptr<const LtlFormula> lhs, rhs;
    };
    struct Next {
        std::shared_ptr<const LtlFormula> arg;
    };
    struct Eventually {
        std::shared_ptr<const LtlFormula> arg;
    };
    struct Always {
        std::shared_ptr<const LtlFormula> arg;
    };
    struct Until {
        std::shared_ptr<const LtlFormula> lhs, rhs;
    };

    using Node = std::variant<TripleAtom, StateAtom, ActionAtom, True, Not, And, Or, Implies,
                              Next, Eventually, Always, Until>;

    explicit LtlFormula(Node node) : node_(std::move(node)) {}
    const Node& node() const { return node_; }

private:
    Node node_;
};

using FormulaPtr = std::shared_ptr<const LtlFormula>;

FormulaPtr ltl_triple(std::string s, std::string a, std::string s2);
FormulaPtr ltl_state(std::string s);
FormulaPtr ltl_action(std::string a);
FormulaPtr ltl_true();
FormulaPtr ltl_not(FormulaPtr f);
FormulaPtr ltl_and(FormulaPtr l, FormulaPtr r);
FormulaPtr ltl_or(FormulaPtr l, FormulaPtr r);
FormulaPtr ltl_implies(FormulaPtr l, FormulaPtr r);
FormulaPtr ltl_next(FormulaPtr f);
FormulaPtr ltl_eventually(FormulaPtr f);
FormulaPtr ltl_always(FormulaPtr f);
FormulaPtr ltl_until(FormulaPtr l, FormulaPtr r);

/// Parses the s-expression syntax, e.g. (and (eventually (act a_A)) (not (state s_A))).
FormulaPtr parse_ltl(const std::string& text);
std::string to_sexpr(const LtlFormula& formula);

/**
 * Deterministic monitor over environment transitions. The transition function
 * is total and deterministic; it resolves state/action names against the
 * environment it is evaluated in, so one monitor works in any environment
 * declaring the names it mentions.
 */
class DeterministicMonitor {
public:
    enum class AcceptanceKind { Reach, Safe, Buchi, CoBuchi };

    struct Acceptance {
        AcceptanceKind kind;
        std::vector<bool> set; ///< membership per monitor state
    };

    using StepFn = std::function<int(const Environment&, int u, int s, int a, int s2)>;

    DeterministicMonitor(int n_states, int start, Acceptance acceptance, StepFn step)
        : n_states_(n_states), start_(start), acceptance_(std::move(acceptance)),
          step_(std::move(step)) {}

    int n_states() const { return n_states_; }
    int start() const { return start_; }
    const Acceptance& acceptance() const { return acceptance_; }
    int step(const Environment& env, int u, int s, int a, int s2) const {
        return step_(env, u, s, a, s2);
    }

private:
    int n_states_;
    int start_;
    Acceptance acceptance_;
    StepFn step_;
};

using MonitorPtr = std::shared_ptr<const DeterministicMonitor>;

/**
 * Compiles the supported fragment: boolean combinations whose temporal
 * members are eventually/always/until over bounded-next boolean layers.
 * Throws UnsupportedFragment outside it; callers may pass a monitor directly
 * to eval_ltl instead.
 */
MonitorPtr compile_ltl(const LtlFormula& formula);

/// Exact satisfaction probability of a monitor under (env, policy).
double eval_ltl(const Environment& env, const Policy& policy,
                const DeterministicMonitor& monitor);
double eval_ltl(const Environment& env, const Policy& policy, const LtlFormula& formula);

/// 0/1 acceptance of an eventually-periodic (or truncated) trajectory.
double monitor_accepts_lasso(const Environment& env, const DeterministicMonitor& monitor,
                             const TrajectoryView& view);

/// 0/1 truth value of a formula on a lasso (compiles, then runs the monitor).
double formula_value_on_lasso(const Environment& env, const LtlFormula& formula,
                              const TrajectoryView& view);

} // namespace objspec
