#include "objspec/hasse.hpp"
#include "objspec/builtins.hpp"
#include "objspec/injective.hpp"
#include "objspec/ltl.hpp"
#include "objspec/random_gen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <sstream>

namespace objspec {

namespace {

constexpr int F = kFormalismCount;

int idx(Formalism f) { return static_cast<int>(f); }

/// Atomic positive fact: `upper` can express `lower`, by this reference.
struct PositiveFact {
    Formalism upper, lower;
    std::string ref;
};

/// Atomic impossibility: `row` cannot express `col`, witnessed by a fixture.
struct NegativeFact {
    Formalism row, col;
    std::string ref;
};

std::vector<PositiveFact> positive_facts() {
    std::vector<PositiveFact> facts;
    for (const EmbedEdge& e : supported_embed_edges())
        facts.push_back({e.target, e.source,
                         "embed:" + to_string(e.source) + "->" + to_string(e.target)});
    const Formalism outer[3] = {Formalism::OMORL, Formalism::FOMR, Formalism::FTLR};
    const Formalism ordering[3] = {Formalism::GOMORL, Formalism::OMO, Formalism::TLO};
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            if (i != j) facts.push_back({outer[i], outer[j], "equiv:outer"});
            if (i != j) facts.push_back({ordering[i], ordering[j], "equiv:ordering"});
        }
    for (int f = 0; f < F; f++)
        if (static_cast<Formalism>(f) != Formalism::PO)
            facts.push_back({Formalism::PO, static_cast<Formalism>(f), "po-definitional"});
    return facts;
}

std::vector<NegativeFact> negative_facts() {
    using Fm = Formalism;
    return {
        {Fm::MR, Fm::LAR, "continuity-dichotomy"},
        {Fm::MR, Fm::LTL, "continuity-dichotomy"},
        {Fm::RM, Fm::LAR, "continuity-dichotomy"},
        {Fm::RM, Fm::LTL, "continuity-dichotomy"},
        {Fm::LAR, Fm::MR, "transient-blindness"},
        {Fm::LAR, Fm::LTL, "transient-blindness"},
        {Fm::LTL, Fm::MR, "binary-range"},
        {Fm::LTL, Fm::LAR, "binary-range"},
        {Fm::MR, Fm::RM, "xor-parity"},
        {Fm::MR, Fm::ONMR, "xor-parity"},
        {Fm::RRL, Fm::RM, "xor-parity"},
        {Fm::RRL, Fm::ONMR, "xor-parity"},
        {Fm::RRL, Fm::LTL, "xor-parity"},
        {Fm::ONMR, Fm::LAR, "mixture-collision-lar"},
        {Fm::ONMR, Fm::LTL, "mixture-collision-ltl"},
        {Fm::FTR, Fm::ONMR, "expectation-linearity"},
        {Fm::FTR, Fm::RRL, "expectation-linearity"},
        {Fm::GOMORL, Fm::FPR, "unvisited-blindness"},
        {Fm::FPR, Fm::GOMORL, "lexicographic-unrepresentable"},
        {Fm::ONMR, Fm::RRL, "mixture-collision-rrl"},
        {Fm::RRL, Fm::LAR, "cycle-average-coupling"},
        {Fm::ONMR, Fm::RM, "mixture-collision-rm"},
    };
}

const std::map<std::string, std::string>& fixture_of_proposition() {
    static const std::map<std::string, std::string> m = {
        {"continuity-dichotomy", "ex_loop"},
        {"transient-blindness", "ex_two_paths"},
        {"binary-range", "ex_single_state"},
        {"xor-parity", "ex_xor"},
        {"mixture-collision-lar", "ex_five_actions"},
        {"mixture-collision-ltl", "ex_three_actions_ltl"},
        {"expectation-linearity", "ex_threshold"},
        {"unvisited-blindness", "ex_unvisited"},
        {"lexicographic-unrepresentable", "ex_lex"},
        {"mixture-collision-rrl", "ex_three_traj"},
        {"cycle-average-coupling", "ex_two_cycles"},
        {"mixture-collision-rm", "ex_rm_counter"},
    };
    return m;
}

/// Propositions whose negative direction has no finite mechanical check.
bool is_analytic_only(const std::string& ref) {
    return ref == "lexicographic-unrepresentable";
}

/// Propositions whose mechanical check is an LP certified on the discount
/// grid; the all-gamma statement stays with the recorded proof reference.
bool is_grid_certified(const std::string& ref) {
    return ref == "xor-parity" || ref == "cycle-average-coupling";
}

struct TableData {
    bool green[17][17] = {};
    std::vector<std::string> chain[17][17]; ///< shortest positive chain refs
};

TableData build_closure() {
    TableData data;
    const auto facts = positive_facts();
    for (int f = 0; f < F; f++) data.green[f][f] = true;
    // BFS per row over the fact graph gives shortest reference chains
    for (int row = 0; row < F; row++) {
        std::vector<int> dist(F, -1);
        std::vector<int> via_fact(F, -1);
        std::vector<int> parent(F, -1);
        dist[row] = 0;
        std::vector<int> queue{row};
        for (std::size_t head = 0; head < queue.size(); head++) {
            const int cur = queue[head];
            for (std::size_t k = 0; k < facts.size(); k++) {
                if (idx(facts[k].upper) != cur) continue;
                const int nxt = idx(facts[k].lower);
                if (dist[nxt] >= 0) continue;
                dist[nxt] = dist[cur] + 1;
                via_fact[nxt] = static_cast<int>(k);
                parent[nxt] = cur;
                queue.push_back(nxt);
            }
        }
        for (int col = 0; col < F; col++) {
            if (dist[col] < 0) continue;
            data.green[row][col] = true;
            std::vector<std::string> chain;
            for (int cur = col; cur != row; cur = parent[cur])
                chain.push_back(facts[via_fact[cur]].ref);
            // outermost first; drop duplicates introduced by equivalence cycles
            std::reverse(chain.begin(), chain.end());
            chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
            data.chain[row][col] = std::move(chain);
        }
    }
    return data;
}

} // namespace

const RelationTable& relation_table() {
    static const RelationTable table = [] {
        const TableData data = build_closure();
        const auto negatives = negative_facts();

        RelationTable t;
        t.cells.assign(F, std::vector<RelationCell>(F));
        for (int row = 0; row < F; row++)
            for (int col = 0; col < F; col++) {
                RelationCell& cell = t.cells[row][col];
                if (data.green[row][col]) {
                    cell.expresses = true;
                    cell.refs = data.chain[row][col];
                    continue;
                }
                cell.expresses = false;
                // justification: a direct fact (A cannot express B) with
                // A expressing `row` and `col` expressing B
                bool found = false;
                for (const NegativeFact& nf : negatives) {
                    const int a = idx(nf.row), b = idx(nf.col);
                    if (!data.green[a][row] || !data.green[col][b]) continue;
                    std::vector<std::string> refs;
                    for (const std::string& r : data.chain[a][row]) refs.push_back(r);
                    refs.push_back(nf.ref);
                    for (const std::string& r : data.chain[col][b]) refs.push_back(r);
                    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
                    cell.refs = std::move(refs);
                    found = true;
                    break;
                }
                if (!found)
                    throw InconsistentTable(
                        "no impossibility justification for (" +
                        to_string(static_cast<Formalism>(row)) + ", " +
                        to_string(static_cast<Formalism>(col)) + ")");
            }
        return t;
    }();
    return table;
}

int HasseGraph::class_of(Formalism f) const {
    for (std::size_t c = 0; c < classes.size(); c++)
        for (Formalism member : classes[c])
            if (member == f) return static_cast<int>(c);
    return -1;
}

HasseGraph derive_hasse(const RelationTable& table) {
    // transitivity must hold before collapsing
    for (int x = 0; x < F; x++)
        for (int y = 0; y < F; y++)
            for (int z = 0; z < F; z++)
                if (table.cells[x][y].expresses && table.cells[y][z].expresses &&
                    !table.cells[x][z].expresses)
                    throw InconsistentTable("expressivity relation is not transitively closed at (" +
                                            to_string(static_cast<Formalism>(x)) + ", " +
                                            to_string(static_cast<Formalism>(y)) + ", " +
                                            to_string(static_cast<Formalism>(z)) + ")");
    for (int x = 0; x < F; x++)
        if (!table.cells[x][x].expresses)
            throw InconsistentTable("diagonal cell is not reflexive");

    HasseGraph graph;
    std::vector<int> class_of(F, -1);
    for (int x = 0; x < F; x++) {
        if (class_of[x] >= 0) continue;
        std::vector<Formalism> members;
        for (int y = 0; y < F; y++)
            if (table.cells[x][y].expresses && table.cells[y][x].expresses) {
                class_of[y] = static_cast<int>(graph.classes.size());
                members.push_back(static_cast<Formalism>(y));
            }
        graph.classes.push_back(std::move(members));
    }

    const int nc = static_cast<int>(graph.classes.size());
    auto above = [&](int c1, int c2) {
        return table.cells[idx(graph.classes[c1][0])][idx(graph.classes[c2][0])].expresses;
    };
    for (int c1 = 0; c1 < nc; c1++)
        for (int c2 = 0; c2 < nc; c2++) {
            if (c1 == c2 || !above(c1, c2)) continue;
            bool covering = true;
            for (int mid = 0; mid < nc; mid++) {
                if (mid == c1 || mid == c2) continue;
                if (above(c1, mid) && above(mid, c2)) {
                    covering = false;
                    break;
                }
            }
            if (covering) graph.edges.emplace_back(c1, c2);
        }
    std::sort(graph.edges.begin(), graph.edges.end());
    return graph;
}

std::string emit_dot(const HasseGraph& graph) {
    auto label = [&](int c) {
        std::string out;
        for (std::size_t k = 0; k < graph.classes[c].size(); k++) {
            if (k) out += " = ";
            out += to_string(graph.classes[c][k]);
        }
        return out;
    };
    std::ostringstream os;
    os << "digraph expressivity {\n";
    os << "  rankdir=TB;\n";
    os << "  node [shape=box];\n";
    for (std::size_t c = 0; c < graph.classes.size(); c++)
        os << "  n" << c << " [label=\"" << label(static_cast<int>(c)) << "\"];\n";
    for (const auto& [hi, lo] : graph.edges) os << "  n" << hi << " -> n" << lo << ";\n";
    os << "}\n";
    return os.str();
}

// --- embedding property suite ------------------------------------------------

namespace {

struct RandomInstance {
    Environment env;
    Policy pi1, pi2;
};

bool edge_needs_enumerable(const EmbedEdge& e) {
    auto traj = [](Formalism f) {
        return f == Formalism::FTR || f == Formalism::INMR || f == Formalism::IMORL;
    };
    if (traj(e.source) || traj(e.target)) return true;
    // LAR/LTL/RM sources embed into FTR, whose evaluation enumerates
    return e.target == Formalism::FTR;
}

RandomInstance random_instance(std::mt19937_64& rng, bool enumerable) {
    RandomInstance inst;
    if (enumerable) {
        inst.env = random_deterministic_environment(rng, 4, 3);
        inst.pi1 = random_deterministic_policy(rng, inst.env);
        inst.pi2 = random_deterministic_policy(rng, inst.env);
    } else {
        inst.env = random_environment(rng, 4, 3);
        inst.pi1 = random_policy(rng, inst.env);
        inst.pi2 = random_policy(rng, inst.env);
    }
    return inst;
}

double random_gamma(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.2, 0.9);
    return unif(rng);
}

FormulaPtr random_formula(std::mt19937_64& rng, const Environment& env) {
    std::uniform_int_distribution<int> ps(0, static_cast<int>(env.n_states()) - 1);
    std::uniform_int_distribution<int> pa(0, static_cast<int>(env.n_actions()) - 1);
    std::uniform_int_distribution<int> kind(0, 4);
    const std::string s = env.states[ps(rng)];
    const std::string a1 = env.actions[pa(rng)];
    const std::string a2 = env.actions[pa(rng)];
    switch (kind(rng)) {
    case 0: return ltl_eventually(ltl_state(s));
    case 1: return ltl_not(ltl_eventually(ltl_state(s)));
    case 2: return ltl_and(ltl_eventually(ltl_action(a1)), ltl_eventually(ltl_action(a2)));
    case 3: return ltl_always(ltl_implies(ltl_action(a1), ltl_next(ltl_action(a2))));
    default: return ltl_until(ltl_action(a1), ltl_state(s));
    }
}

RewardMachine random_machine(std::mt19937_64& rng, const Environment& env) {
    const std::size_t n = env.n_states(), a = env.n_actions();
    RewardMachine m;
    m.machine_states = {"u0", "u1"};
    m.start = 0;
    m.gamma = random_gamma(rng);
    std::uniform_int_distribution<int> coin(0, 1);
    // machine transition depends on the action taken and current machine state
    std::vector<std::vector<int>> by_action(2, std::vector<int>(a));
    for (int u = 0; u < 2; u++)
        for (std::size_t ai = 0; ai < a; ai++) by_action[u][ai] = coin(rng);
    m.delta_u.assign(2, std::vector<std::vector<std::vector<int>>>(
                            n, std::vector<std::vector<int>>(a, std::vector<int>(n, 0))));
    for (int u = 0; u < 2; u++)
        for (std::size_t s = 0; s < n; s++)
            for (std::size_t ai = 0; ai < a; ai++)
                for (std::size_t s2 = 0; s2 < n; s2++) m.delta_u[u][s][ai][s2] = by_action[u][ai];
    m.delta_r.assign(2, std::vector<RewardFunction>(2, RewardFunction::zeros(n, a)));
    for (int u = 0; u < 2; u++)
        for (int u2 = 0; u2 < 2; u2++) m.delta_r[u][u2] = random_reward(rng, env);
    return m;
}

ScalarFn random_scalar_fn(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    switch (kind(rng)) {
    case 0: return builtin_scalar_fn("identity");
    case 1: return builtin_scalar_fn("abs");
    default: {
        const double c = unif(rng);
        return [c](double x) { return x >= c ? 1.0 : 0.0; };
    }
    }
}

VectorFn random_vector_fn(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    switch (kind(rng)) {
    case 0: return builtin_vector_fn("sum");
    case 1: return builtin_vector_fn("first");
    default: return builtin_vector_fn("max");
    }
}

TrajectoryFn random_trajectory_fn(std::mt19937_64& rng, const Environment& env) {
    std::uniform_int_distribution<int> kind(0, 2);
    switch (kind(rng)) {
    case 0: {
        auto reward = std::make_shared<RewardFunction>(random_reward(rng, env));
        const double gamma = 0.4;
        return [reward, gamma](const TrajectoryView& view) {
            double g = 0.0, disc = 1.0;
            for (const Transition& x : view.stem) {
                g += disc * reward->at(x.s, x.a, x.s2);
                disc *= gamma;
            }
            if (!view.cycle.empty()) {
                double block = 0.0, bdisc = 1.0;
                for (const Transition& x : view.cycle) {
                    block += bdisc * reward->at(x.s, x.a, x.s2);
                    bdisc *= gamma;
                }
                g += disc * block /
                     (1.0 - std::pow(gamma, static_cast<double>(view.cycle.size())));
            }
            return g;
        };
    }
    case 1: {
        auto monitor = compile_ltl(*random_formula(rng, env));
        auto env_copy = std::make_shared<Environment>(env);
        return [monitor, env_copy](const TrajectoryView& view) {
            return monitor_accepts_lasso(*env_copy, *monitor, view);
        };
    }
    default: {
        auto reward = std::make_shared<RewardFunction>(random_reward(rng, env));
        return [reward](const TrajectoryView& view) {
            if (view.cycle.empty()) return 0.0;
            double sum = 0.0;
            for (const Transition& x : view.cycle) sum += reward->at(x.s, x.a, x.s2);
            return sum / static_cast<double>(view.cycle.size());
        };
    }
    }
}

LotteryFn random_lottery_fn(std::mt19937_64& rng, const Environment& env) {
    std::uniform_int_distribution<int> kind(0, 1);
    if (kind(rng) == 0) {
        // linear functional of the occupancy measure
        const std::size_t dim = env.n_states() * env.n_actions() * env.n_states();
        auto weights = std::make_shared<std::vector<double>>(dim);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (double& w : *weights) w = unif(rng);
        return [weights](const LotteryCertificate& cert) {
            double v = 0.0;
            for (std::size_t k = 0; k < weights->size(); k++)
                v += (*weights)[k] * cert.occupancy.values[k];
            return v;
        };
    }
    return [](const LotteryCertificate& cert) {
        // entropy of the normalized occupancy
        std::vector<double> normalized(cert.occupancy.values);
        const double total = cert.occupancy.total_mass();
        for (double& v : normalized) v /= total;
        return shannon_entropy(normalized);
    };
}

ObjectiveSpec random_source_spec(Formalism f, std::mt19937_64& rng, const Environment& env) {
    switch (f) {
    case Formalism::MR: return MrSpec{random_reward(rng, env), random_gamma(rng)};
    case Formalism::LAR: return LarSpec{random_reward(rng, env)};
    case Formalism::LTL: return LtlSpec{random_formula(rng, env), nullptr};
    case Formalism::RM: return RmSpec{random_machine(rng, env)};
    case Formalism::INMR:
        return InmrSpec{random_reward(rng, env), random_scalar_fn(rng), random_gamma(rng)};
    case Formalism::IMORL: {
        std::uniform_int_distribution<int> nk(1, 2);
        const int k = nk(rng);
        std::vector<RewardFunction> rewards;
        for (int i = 0; i < k; i++) rewards.push_back(random_reward(rng, env));
        return ImorlSpec{std::move(rewards), random_vector_fn(rng), random_gamma(rng)};
    }
    case Formalism::FTR: return FtrSpec{random_trajectory_fn(rng, env)};
    case Formalism::RRL: {
        std::uniform_real_distribution<double> ua(-1.0, 1.0);
        std::uniform_int_distribution<int> kind(0, 1);
        return RrlSpec{random_reward(rng, env), ua(rng),
                       builtin_regularizer(kind(rng) ? "entropy" : "support-count"),
                       random_gamma(rng)};
    }
    case Formalism::ONMR:
        return OnmrSpec{random_reward(rng, env), random_scalar_fn(rng), random_gamma(rng)};
    case Formalism::OMORL: {
        std::uniform_int_distribution<int> nk(1, 2);
        const int k = nk(rng);
        std::vector<RewardFunction> rewards;
        for (int i = 0; i < k; i++) rewards.push_back(random_reward(rng, env));
        return OmorlSpec{std::move(rewards), random_vector_fn(rng), random_gamma(rng)};
    }
    case Formalism::FTLR: return FtlrSpec{random_lottery_fn(rng, env), random_gamma(rng)};
    default:
        throw ValidationError("no random generator for source formalism " + to_string(f));
    }
}

} // namespace

EdgeCheckResult check_embedding_edge(const EmbedEdge& edge, int reps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    EdgeCheckResult result;
    result.edge = edge;
    result.reps = reps;
    const bool enumerable = edge_needs_enumerable(edge);
    const bool preorder_target = !has_scalar_eval(edge.target);

    for (int rep = 0; rep < reps; rep++) {
        const RandomInstance inst = random_instance(rng, enumerable);
        const ObjectiveSpec source = random_source_spec(edge.source, rng, inst.env);
        const ObjectiveSpec target = embed(source, edge.target, inst.env);
        bool ok = true;
        if (preorder_target) {
            const Ordering src = compare(inst.env, inst.pi1, inst.pi2, source);
            const Ordering tgt = compare(inst.env, inst.pi1, inst.pi2, target);
            ok = src == tgt;
        } else {
            for (const Policy& pi : {inst.pi1, inst.pi2}) {
                const double js = evaluate(inst.env, pi, source);
                const double jt = evaluate(inst.env, pi, target);
                const double err = std::abs(js - jt);
                result.max_error = std::max(result.max_error, err);
                if (!(err <= 1e-9)) ok = false;
            }
        }
        if (!ok) result.failures++;
    }
    return result;
}

EquivSuiteResult run_equiv_suite(const std::string& name, int reps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    EquivSuiteResult result;
    result.name = name;
    result.reps = reps;

    if (name == "equiv:inner") {
        // FTR -> INMR round trip through the injective-return inverse
        const EdgeCheckResult edge =
            check_embedding_edge({Formalism::FTR, Formalism::INMR}, reps, seed);
        result.failures = edge.failures;
        result.detail = "max error " + std::to_string(edge.max_error);
        return result;
    }

    if (name == "equiv:outer") {
        for (int rep = 0; rep < reps; rep++) {
            Environment env = random_environment(rng, 4, 3);
            Policy pi = random_policy(rng, env);
            const double gamma = random_gamma(rng);
            bool ok = true;
            // delta-basis policy evaluation vector equals the occupancy measure
            const std::vector<double> jvec =
                policy_eval_vector(env, pi, build_delta_reward_basis(env), gamma);
            const OccupancyMeasure m = occupancy_measure(env, pi, gamma);
            for (std::size_t k = 0; k < jvec.size(); k++)
                if (std::abs(jvec[k] - m.values[k]) > 1e-9) ok = false;
            // policies equal on visited states share every lottery-determined value
            Environment env2 = random_sparse_environment(rng, 4, 3, true);
            Policy p1 = random_policy(rng, env2);
            Policy p2 = p1;
            const int hidden = static_cast<int>(env2.n_states()) - 1;
            p2.action_probs[hidden] = random_policy(rng, env2).action_probs[hidden];
            if (!lottery_equal(env2, p1, p2, gamma)) ok = false;
            const RewardFunction r = random_reward(rng, env2);
            const double j1 = eval_rrl(env2, p1, r, 0.7, shannon_entropy, gamma);
            const double j2 = eval_rrl(env2, p2, r, 0.7, shannon_entropy, gamma);
            if (std::abs(j1 - j2) > 1e-9) ok = false;
            const std::vector<RewardFunction> basis = build_delta_reward_basis(env2);
            const std::vector<double> v1 = policy_eval_vector(env2, p1, basis, gamma);
            const std::vector<double> v2 = policy_eval_vector(env2, p2, basis, gamma);
            for (std::size_t k = 0; k < v1.size(); k++)
                if (std::abs(v1[k] - v2[k]) > 1e-9) ok = false;
            if (!ok) result.failures++;
        }
        return result;
    }

    if (name == "equiv:ordering") {
        for (int rep = 0; rep < reps; rep++) {
            Environment env = random_environment(rng, 4, 3);
            Policy p1 = random_policy(rng, env);
            Policy p2 = random_policy(rng, env);
            const double gamma = random_gamma(rng);
            // GOMORL with the delta basis, OMO and TLO over the same
            // lexicographic preorder must order every pair identically
            GomorlSpec gomorl{build_delta_reward_basis(env), gamma, lexicographic_preorder()};
            OmoSpec omo{gamma, [](const OccupancyMeasure& a, const OccupancyMeasure& b) {
                            return lexicographic_compare(a.values, b.values);
                        }};
            TloSpec tlo{[](const LotteryCertificate& a, const LotteryCertificate& b) {
                            return lexicographic_compare(a.occupancy.values,
                                                         b.occupancy.values);
                        },
                        gamma};
            const Ordering g = compare(env, p1, p2, ObjectiveSpec{gomorl});
            const Ordering o = compare(env, p1, p2, ObjectiveSpec{omo});
            const Ordering t = compare(env, p1, p2, ObjectiveSpec{tlo});
            if (!(g == o && o == t)) result.failures++;
        }
        return result;
    }

    throw ValidationError("unknown equivalence suite: " + name);
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json cells_json = nlohmann::json::array();
    for (const CellEntry& c : cells)
        cells_json.push_back({{"row", c.row},
                              {"col", c.col},
                              {"expresses", c.expresses},
                              {"refs", c.refs},
                              {"checkable", c.checkable},
                              {"grid_certified", c.grid_certified},
                              {"pass", c.pass}});
    nlohmann::json fixtures_json = nlohmann::json::array();
    for (const SeparationReport& r : fixture_reports) fixtures_json.push_back(r.to_json());
    nlohmann::json edges_json = nlohmann::json::array();
    for (const EdgeCheckResult& e : edge_results)
        edges_json.push_back({{"edge", to_string(e.edge.source) + "->" + to_string(e.edge.target)},
                              {"reps", e.reps},
                              {"failures", e.failures},
                              {"max_error", e.max_error}});
    nlohmann::json equiv_json = nlohmann::json::array();
    for (const EquivSuiteResult& e : equiv_results)
        equiv_json.push_back({{"suite", e.name},
                              {"reps", e.reps},
                              {"failures", e.failures},
                              {"detail", e.detail}});
    return nlohmann::json{{"cells", cells_json},
                          {"fixtures", fixtures_json},
                          {"embeddings", edges_json},
                          {"equivalences", equiv_json},
                          {"table_consistent", table_consistent},
                          {"dot_stable", dot_stable},
                          {"failures", failures}};
}

VerificationReport verify_all() {
    VerificationReport report;
    const RelationTable& table = relation_table();

    report.table_consistent = true;
    try {
        const HasseGraph graph = derive_hasse(table);
        const std::string dot1 = emit_dot(graph);
        const std::string dot2 = emit_dot(derive_hasse(relation_table()));
        report.dot_stable = dot1 == dot2;
    } catch (const InconsistentTable&) {
        report.table_consistent = false;
        report.dot_stable = false;
    }
    if (!report.table_consistent) report.failures++;
    if (!report.dot_stable) report.failures++;

    // fixtures, sorted by name for deterministic aggregation
    std::vector<std::string> names;
    for (const SeparationFixture& f : fixtures()) names.push_back(f.name);
    std::sort(names.begin(), names.end());
    std::map<std::string, bool> fixture_pass;
    for (const std::string& name : names) {
        SeparationReport rep = run_separation(name);
        fixture_pass[name] = rep.pass;
        if (!rep.pass) report.failures++;
        report.fixture_reports.push_back(std::move(rep));
    }

    // one property suite per constructive edge
    std::map<std::string, bool> edge_pass;
    std::uint64_t seed = 90210;
    for (const EmbedEdge& edge : supported_embed_edges()) {
        const EdgeCheckResult res = check_embedding_edge(edge, 50, seed++);
        edge_pass["embed:" + to_string(edge.source) + "->" + to_string(edge.target)] =
            res.failures == 0;
        if (res.failures != 0) report.failures++;
        report.edge_results.push_back(res);
    }
    std::map<std::string, bool> equiv_pass;
    for (const std::string name : {"equiv:inner", "equiv:outer", "equiv:ordering"}) {
        const EquivSuiteResult res = run_equiv_suite(name, 50, seed++);
        equiv_pass[name] = res.failures == 0;
        if (res.failures != 0) report.failures++;
        report.equiv_results.push_back(res);
    }

    // per-cell resolution of the reference chains
    const auto& prop_fixture = fixture_of_proposition();
    for (int row = 0; row < F; row++)
        for (int col = 0; col < F; col++) {
            const RelationCell& cell = table.cells[row][col];
            VerificationReport::CellEntry entry;
            entry.row = to_string(static_cast<Formalism>(row));
            entry.col = to_string(static_cast<Formalism>(col));
            entry.expresses = cell.expresses;
            entry.refs = cell.refs;
            entry.checkable = true;
            entry.pass = true;
            for (const std::string& ref : cell.refs) {
                if (ref == "po-definitional") continue;
                if (ref.rfind("embed:", 0) == 0) {
                    const auto it = edge_pass.find(ref);
                    if (it == edge_pass.end() || !it->second) entry.pass = false;
                } else if (ref.rfind("equiv:", 0) == 0) {
                    const auto it = equiv_pass.find(ref);
                    if (it == equiv_pass.end() || !it->second) entry.pass = false;
                } else {
                    const auto fit = prop_fixture.find(ref);
                    if (fit == prop_fixture.end()) {
                        entry.pass = false;
                        continue;
                    }
                    if (is_analytic_only(ref)) entry.checkable = false;
                    if (is_grid_certified(ref)) entry.grid_certified = true;
                    const auto pit = fixture_pass.find(fit->second);
                    if (pit == fixture_pass.end() || !pit->second) entry.pass = false;
                }
            }
            if (!entry.pass) report.failures++;
            report.cells.push_back(std::move(entry));
        }
    return report;
}

} // namespace objspec
