#include "objspec/ltl.hpp"
#include "objspec/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace objspec {

// --- formula constructors ----------------------------------------------------

FormulaPtr ltl_triple(std::string s, std::string a, std::string s2) {
    return std::make_shared<LtlFormula>(
        LtlFormula::TripleAtom{std::move(s), std::move(a), std::move(s2)});
}
FormulaPtr ltl_state(std::string s) {
    return std::make_shared<LtlFormula>(LtlFormula::StateAtom{std::move(s)});
}
FormulaPtr ltl_action(std::string a) {
    return std::make_shared<LtlFormula>(LtlFormula::ActionAtom{std::move(a)});
}
FormulaPtr ltl_true() { return std::make_shared<LtlFormula>(LtlFormula::True{}); }
FormulaPtr ltl_not(FormulaPtr f) {
    return std::make_shared<LtlFormula>(LtlFormula::Not{std::move(f)});
}
FormulaPtr ltl_and(FormulaPtr l, FormulaPtr r) {
    return std::make_shared<LtlFormula>(LtlFormula::And{std::move(l), std::move(r)});
}
FormulaPtr ltl_or(FormulaPtr l, FormulaPtr r) {
    return std::make_shared<LtlFormula>(LtlFormula::Or{std::move(l), std::move(r)});
}
FormulaPtr ltl_implies(FormulaPtr l, FormulaPtr r) {
    return std::make_shared<LtlFormula>(LtlFormula::Implies{std::move(l), std::move(r)});
}
FormulaPtr ltl_next(FormulaPtr f) {
    return std::make_shared<LtlFormula>(LtlFormula::Next{std::move(f)});
}
FormulaPtr ltl_eventually(FormulaPtr f) {
    return std::make_shared<LtlFormula>(LtlFormula::Eventually{std::move(f)});
}
FormulaPtr ltl_always(FormulaPtr f) {
    return std::make_shared<LtlFormula>(LtlFormula::Always{std::move(f)});
}
FormulaPtr ltl_until(FormulaPtr l, FormulaPtr r) {
    return std::make_shared<LtlFormula>(LtlFormula::Until{std::move(l), std::move(r)});
}

// --- s-expression parser -----------------------------------------------------

namespace {

struct SexprParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit SexprParser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
    }

    std::string token() {
        skip_ws();
        if (pos >= text.size()) throw ValidationError("ltl: unexpected end of input");
        if (text[pos] == '(' || text[pos] == ')') return std::string(1, text[pos++]);
        std::size_t begin = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')')
            pos++;
        return text.substr(begin, pos - begin);
    }

    FormulaPtr parse() {
        std::string t = token();
        if (t != "(") {
            if (t == "true") return ltl_true();
            if (t == "false") return ltl_not(ltl_true());
            throw ValidationError("ltl: expected '(' or true/false, got '" + t + "'");
        }
        std::string head = token();
        FormulaPtr out;
        auto unary = [&](auto make) {
            FormulaPtr arg = parse();
            out = make(std::move(arg));
        };
        auto binary = [&](auto make) {
            FormulaPtr lhs = parse();
            FormulaPtr rhs = parse();
            out = make(std::move(lhs), std::move(rhs));
        };
        if (head == "act") {
            out = ltl_action(token());
        } else if (head == "state") {
            out = ltl_state(token());
        } else if (head == "tr") {
            std::string s = token(), a = token(), s2 = token();
            out = ltl_triple(std::move(s), std::move(a), std::move(s2));
        } else if (head == "not") {
            unary(ltl_not);
        } else if (head == "next") {
            unary(ltl_next);
        } else if (head == "eventually") {
            unary(ltl_eventually);
        } else if (head == "always") {
            unary(ltl_always);
        } else if (head == "and") {
            // n-ary, folded left
            std::vector<FormulaPtr> args;
            skip_ws();
            while (pos < text.size() && text[pos] != ')') args.push_back(parse()), skip_ws();
            if (args.empty()) throw ValidationError("ltl: empty (and)");
            out = args[0];
            for (std::size_t i = 1; i < args.size(); i++) out = ltl_and(out, args[i]);
            std::string close = token();
            if (close != ")") throw ValidationError("ltl: expected ')'");
            return out;
        } else if (head == "or") {
            std::vector<FormulaPtr> args;
            skip_ws();
            while (pos < text.size() && text[pos] != ')') args.push_back(parse()), skip_ws();
            if (args.empty()) throw ValidationError("ltl: empty (or)");
            out = args[0];
            for (std::size_t i = 1; i < args.size(); i++) out = ltl_or(out, args[i]);
            std::string close = token();
            if (close != ")") throw ValidationError("ltl: expected ')'");
            return out;
        } else if (head == "implies") {
            binary(ltl_implies);
        } else if (head == "until") {
            binary(ltl_until);
        } else {
            throw ValidationError("ltl: unknown operator '" + head + "'");
        }
        std::string close = token();
        if (close != ")") throw ValidationError("ltl: expected ')' after " + head);
        return out;
    }
};

} // namespace

FormulaPtr parse_ltl(const std::string& text) {
    SexprParser p(text);
    FormulaPtr f = p.parse();
    p.skip_ws();
    if (p.pos != text.size()) throw ValidationError("ltl: trailing input after formula");
    return f;
}

std::string to_sexpr(const LtlFormula& formula) {
    struct Printer {
        std::string operator()(const LtlFormula::TripleAtom& a) const {
            return "(tr " + a.s + " " + a.a + " " + a.s2 + ")";
        }
        std::string operator()(const LtlFormula::StateAtom& a) const {
            return "(state " + a.s + ")";
        }
        std::string operator()(const LtlFormula::ActionAtom& a) const {
            return "(act " + a.a + ")";
        }
        std::string operator()(const LtlFormula::True&) const { return "true"; }
        std::string operator()(const LtlFormula::Not& n) const {
            return "(not " + to_sexpr(*n.arg) + ")";
        }
        std::string operator()(const LtlFormula::And& n) const {
            return "(and " + to_sexpr(*n.lhs) + " " + to_sexpr(*n.rhs) + ")";
        }
        std::string operator()(const LtlFormula::Or& n) const {
            return "(or " + to_sexpr(*n.lhs) + " " + to_sexpr(*n.rhs) + ")";
        }
        std::string operator()(const LtlFormula::Implies& n) const {
            return "(implies " + to_sexpr(*n.lhs) + " " + to_sexpr(*n.rhs) + ")";
        }
        std::string operator()(const LtlFormula::Next& n) const {
            return "(next " + to_sexpr(*n.arg) + ")";
        }
        std::string operator()(const LtlFormula::Eventually& n) const {
            return "(eventually " + to_sexpr(*n.arg) + ")";
        }
        std::string operator()(const LtlFormula::Always& n) const {
            return "(always " + to_sexpr(*n.arg) + ")";
        }
        std::string operator()(const LtlFormula::Until& n) const {
            return "(until " + to_sexpr(*n.lhs) + " " + to_sexpr(*n.rhs) + ")";
        }
    };
    return std::visit(Printer{}, formula.node());
}

// --- fragment compiler -------------------------------------------------------

namespace {

struct AtomPattern {
    enum class Kind { Triple, State, Action } kind;
    std::string s, a, s2;

    bool operator<(const AtomPattern& o) const {
        return std::tie(kind, s, a, s2) < std::tie(o.kind, o.s, o.a, o.s2);
    }

    bool matches(const std::string& sn, const std::string& an, const std::string& s2n) const {
        switch (kind) {
        case Kind::Triple: return s == sn && a == an && s2 == s2n;
        case Kind::State: return s == sn || s == s2n;
        case Kind::Action: return a == an;
        }
        return false;
    }
};

/// Bounded-next boolean layer as a window predicate over atom bitmasks.
struct WindowPredicate {
    int depth = 0; ///< max next-nesting; reads window positions 0..depth
    std::function<bool(const std::vector<int>&)> eval; ///< window of size depth+1
};

struct Compiler {
    std::vector<AtomPattern> atoms;
    std::map<AtomPattern, int> atom_index;

    int intern(AtomPattern atom) {
        auto it = atom_index.find(atom);
        if (it != atom_index.end()) return it->second;
        int id = static_cast<int>(atoms.size());
        atoms.push_back(atom);
        atom_index.emplace(std::move(atom), id);
        if (atoms.size() > 12) throw UnsupportedFragment("formula mentions too many atoms");
        return id;
    }

    // Builds a window predicate for a temporal-free subformula, or nullopt.
    std::optional<WindowPredicate> layer0(const LtlFormula& f) {
        using F = LtlFormula;
        const auto& node = f.node();
        if (const auto* atom = std::get_if<F::TripleAtom>(&node)) {
            int id = intern({AtomPattern::Kind::Triple, atom->s, atom->a, atom->s2});
            return WindowPredicate{0, [id](const std::vector<int>& w) { return (w[0] >> id) & 1; }};
        }
        if (const auto* atom = std::get_if<F::StateAtom>(&node)) {
            int id = intern({AtomPattern::Kind::State, atom->s, "", ""});
            return WindowPredicate{0, [id](const std::vector<int>& w) { return (w[0] >> id) & 1; }};
        }
        if (const auto* atom = std::get_if<F::ActionAtom>(&node)) {
            int id = intern({AtomPattern::Kind::Action, "", atom->a, ""});
            return WindowPredicate{0, [id](const std::vector<int>& w) { return (w[0] >> id) & 1; }};
        }
        if (std::get_if<F::True>(&node))
            return WindowPredicate{0, [](const std::vector<int>&) { return true; }};
        if (const auto* n = std::get_if<F::Not>(&node)) {
            auto inner = layer0(*n->arg);
            if (!inner) return std::nullopt;
            auto fn = inner->eval;
            return WindowPredicate{inner->depth,
                                   [fn](const std::vector<int>& w) { return !fn(w); }};
        }
        auto combine = [&](const LtlFormula& lhs, const LtlFormula& rhs,
                           auto op) -> std::optional<WindowPredicate> {
            auto l = layer0(lhs);
            auto r = layer0(rhs);
            if (!l || !r) return std::nullopt;
            auto lf = l->eval;
            auto rf = r->eval;
            return WindowPredicate{std::max(l->depth, r->depth),
                                   [lf, rf, op](const std::vector<int>& w) {
                                       return op(lf(w), rf(w));
                                   }};
        };
        if (const auto* n = std::get_if<F::And>(&node))
            return combine(*n->lhs, *n->rhs, [](bool x, bool y) { return x && y; });
        if (const auto* n = std::get_if<F::Or>(&node))
            return combine(*n->lhs, *n->rhs, [](bool x, bool y) { return x || y; });
        if (const auto* n = std::get_if<F::Implies>(&node))
            return combine(*n->lhs, *n->rhs, [](bool x, bool y) { return !x || y; });
        if (const auto* n = std::get_if<F::Next>(&node)) {
            auto inner = layer0(*n->arg);
            if (!inner) return std::nullopt;
            if (inner->depth >= 3) throw UnsupportedFragment("next-operator nesting too deep");
            auto fn = inner->eval;
            return WindowPredicate{inner->depth + 1, [fn](const std::vector<int>& w) {
                                       std::vector<int> shifted(w.begin() + 1, w.end());
                                       return fn(shifted);
                                   }};
        }
        return std::nullopt; // temporal operator
    }

    enum class UnitKind { Bare, Eventually, Always, Until };
    struct Unit {
        UnitKind kind;
        WindowPredicate g;
        WindowPredicate h; ///< until only
        int window() const {
            int w = g.depth + 1;
            if (kind == UnitKind::Until) w = std::max(w, h.depth + 1);
            return w;
        }
    };

    // Top-level boolean expression over unit flags.
    struct TopExpr {
        enum class Op { Unit, Not, And, Or } op;
        int unit = -1;
        std::vector<TopExpr> args;

        bool eval(const std::vector<bool>& flags) const {
            switch (op) {
            case Op::Unit: return flags[unit];
            case Op::Not: return !args[0].eval(flags);
            case Op::And: return args[0].eval(flags) && args[1].eval(flags);
            case Op::Or: return args[0].eval(flags) || args[1].eval(flags);
            }
            return false;
        }
    };

    std::vector<Unit> units;

    TopExpr decompose(const LtlFormula& f) {
        using F = LtlFormula;
        if (auto pred = try_layer0(f)) {
            units.push_back({UnitKind::Bare, std::move(*pred), {},});
            return TopExpr{TopExpr::Op::Unit, static_cast<int>(units.size()) - 1, {}};
        }
        const auto& node = f.node();
        if (const auto* n = std::get_if<F::Not>(&node))
            return TopExpr{TopExpr::Op::Not, -1, {decompose(*n->arg)}};
        if (const auto* n = std::get_if<F::And>(&node))
            return TopExpr{TopExpr::Op::And, -1, {decompose(*n->lhs), decompose(*n->rhs)}};
        if (const auto* n = std::get_if<F::Or>(&node))
            return TopExpr{TopExpr::Op::Or, -1, {decompose(*n->lhs), decompose(*n->rhs)}};
        if (const auto* n = std::get_if<F::Implies>(&node))
            return TopExpr{TopExpr::Op::Or, -1,
                           {TopExpr{TopExpr::Op::Not, -1, {decompose(*n->lhs)}},
                            decompose(*n->rhs)}};
        if (const auto* n = std::get_if<F::Eventually>(&node)) {
            auto inner = layer0(*n->arg);
            if (!inner)
                throw UnsupportedFragment("eventually requires a temporal-free argument");
            units.push_back({UnitKind::Eventually, std::move(*inner), {}});
            return TopExpr{TopExpr::Op::Unit, static_cast<int>(units.size()) - 1, {}};
        }
        if (const auto* n = std::get_if<F::Always>(&node)) {
            auto inner = layer0(*n->arg);
            if (!inner) throw UnsupportedFragment("always requires a temporal-free argument");
            units.push_back({UnitKind::Always, std::move(*inner), {}});
            return TopExpr{TopExpr::Op::Unit, static_cast<int>(units.size()) - 1, {}};
        }
        if (const auto* n = std::get_if<F::Until>(&node)) {
            auto lhs = layer0(*n->lhs);
            auto rhs = layer0(*n->rhs);
            if (!lhs || !rhs)
                throw UnsupportedFragment("until requires temporal-free arguments");
            units.push_back({UnitKind::Until, std::move(*lhs), std::move(*rhs)});
            return TopExpr{TopExpr::Op::Unit, static_cast<int>(units.size()) - 1, {}};
        }
        throw UnsupportedFragment("operator not supported at this position");
    }

    std::optional<WindowPredicate> try_layer0(const LtlFormula& f) {
        // layer0 may intern atoms even when it ultimately fails on an outer
        // node; interning is idempotent so that is harmless.
        return layer0(f);
    }

    /// Observations realizable by some transition triple, given atom kinds.
    std::vector<int> realizable_observations() const {
        std::set<std::string> state_names{"\x01other"};
        std::set<std::string> action_names{"\x01other"};
        for (const auto& atom : atoms) {
            if (atom.kind == AtomPattern::Kind::State) state_names.insert(atom.s);
            if (atom.kind == AtomPattern::Kind::Action) action_names.insert(atom.a);
            if (atom.kind == AtomPattern::Kind::Triple) {
                state_names.insert(atom.s);
                state_names.insert(atom.s2);
                action_names.insert(atom.a);
            }
        }
        std::set<int> obs;
        for (const auto& s : state_names)
            for (const auto& a : action_names)
                for (const auto& s2 : state_names) {
                    int mask = 0;
                    for (std::size_t i = 0; i < atoms.size(); i++)
                        if (atoms[i].matches(s, a, s2)) mask |= 1 << i;
                    obs.insert(mask);
                }
        return {obs.begin(), obs.end()};
    }
};

/// Explicit component automaton over observation values.
struct ComponentDfa {
    int n_states = 0;
    int start = 0;
    std::vector<std::vector<int>> table; ///< [state][obs-col]
    std::vector<bool> flag;              ///< limit flag contribution per state
};

constexpr int kStatusPending = 0, kStatusAccepted = 1, kStatusRejected = 2;

ComponentDfa build_component(const Compiler::Unit& unit, const std::vector<int>& alphabet) {
    const int w = unit.window();
    // state encoding: status, then buffered observations (most recent last);
    // Bare additionally freezes after its single evaluation.
    using Key = std::vector<int>;
    std::map<Key, int> ids;
    std::vector<Key> keys;
    auto intern = [&](const Key& k) {
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(keys.size());
        ids.emplace(k, id);
        keys.push_back(k);
        if (keys.size() > 4096) throw UnsupportedFragment("monitor component too large");
        return id;
    };

    Key start_key{kStatusPending};
    intern(start_key);
    ComponentDfa dfa;
    dfa.start = 0;

    for (std::size_t cur = 0; cur < keys.size(); cur++) {
        const Key key = keys[cur];
        dfa.table.resize(keys.size());
        dfa.table[cur].assign(alphabet.size(), -1);
        const int status = key[0];
        for (std::size_t col = 0; col < alphabet.size(); col++) {
            const int obs = alphabet[col];
            Key next;
            if (status != kStatusPending) {
                next = key; // terminal statuses absorb
            } else {
                std::vector<int> buffer(key.begin() + 1, key.end());
                if (static_cast<int>(buffer.size()) + 1 < w) {
                    next = {kStatusPending};
                    for (int b : buffer) next.push_back(b);
                    next.push_back(obs);
                } else {
                    std::vector<int> window = buffer;
                    window.push_back(obs);
                    int new_status = kStatusPending;
                    switch (unit.kind) {
                    case Compiler::UnitKind::Bare:
                        new_status = unit.g.eval(window) ? kStatusAccepted : kStatusRejected;
                        break;
                    case Compiler::UnitKind::Eventually:
                        if (unit.g.eval(window)) new_status = kStatusAccepted;
                        break;
                    case Compiler::UnitKind::Always:
                        if (!unit.g.eval(window)) new_status = kStatusRejected;
                        break;
                    case Compiler::UnitKind::Until:
                        if (unit.h.eval(window)) new_status = kStatusAccepted;
                        else if (!unit.g.eval(window)) new_status = kStatusRejected;
                        break;
                    }
                    if (new_status != kStatusPending) {
                        next = {new_status};
                    } else {
                        next = {kStatusPending};
                        for (std::size_t i = 1; i < window.size(); i++) next.push_back(window[i]);
                    }
                }
            }
            dfa.table[cur][col] = intern(next);
        }
    }
    dfa.n_states = static_cast<int>(keys.size());
    dfa.table.resize(keys.size());
    dfa.flag.resize(keys.size());
    for (int i = 0; i < dfa.n_states; i++) {
        const int status = keys[i][0];
        dfa.flag[i] = unit.kind == Compiler::UnitKind::Always ? status != kStatusRejected
                                                              : status == kStatusAccepted;
    }
    return dfa;
}

struct ProductDfa {
    int n_states = 0;
    int start = 0;
    std::vector<std::vector<int>> table;
    std::vector<bool> accept; ///< acceptance-set membership
};

/// Bisimulation quotient preserving the accept label along every run.
ProductDfa minimize(const ProductDfa& dfa) {
    const std::size_t n_cols = dfa.table.empty() ? 0 : dfa.table[0].size();
    std::vector<int> part(dfa.n_states);
    for (int i = 0; i < dfa.n_states; i++) part[i] = dfa.accept[i] ? 1 : 0;
    int n_parts = 0;
    {
        std::set<int> distinct(part.begin(), part.end());
        n_parts = static_cast<int>(distinct.size());
        // normalize labels to 0..n_parts-1
        std::map<int, int> remap;
        for (int v : distinct) remap.emplace(v, static_cast<int>(remap.size()));
        for (int& v : part) v = remap[v];
    }
    while (true) {
        std::map<std::vector<int>, int> sig_ids;
        std::vector<int> next_part(dfa.n_states);
        for (int i = 0; i < dfa.n_states; i++) {
            std::vector<int> sig{part[i]};
            for (std::size_t c = 0; c < n_cols; c++) sig.push_back(part[dfa.table[i][c]]);
            auto [it, _] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size()));
            next_part[i] = it->second;
        }
        const int count = static_cast<int>(sig_ids.size());
        part = std::move(next_part);
        if (count == n_parts) break; // refinement is monotone; equal count = fixpoint
        n_parts = count;
    }
    // renumber parts in order of first discovery from the start state
    std::vector<int> renum(n_parts, -1);
    std::vector<int> order;
    renum[part[dfa.start]] = 0;
    order.push_back(dfa.start);
    std::vector<int> rep_of(n_parts, -1);
    rep_of[part[dfa.start]] = dfa.start;
    int assigned = 1;
    for (std::size_t head = 0; head < order.size(); head++) {
        int state = order[head];
        for (std::size_t c = 0; c < n_cols; c++) {
            int t = dfa.table[state][c];
            if (renum[part[t]] < 0) {
                renum[part[t]] = assigned++;
                rep_of[part[t]] = t;
                order.push_back(t);
            }
        }
    }
    ProductDfa out;
    out.n_states = assigned;
    out.start = renum[part[dfa.start]];
    out.table.assign(assigned, std::vector<int>(n_cols, 0));
    out.accept.assign(assigned, false);
    for (int p = 0; p < n_parts; p++) {
        if (renum[p] < 0) continue; // unreachable
        const int rep = rep_of[p];
        out.accept[renum[p]] = dfa.accept[rep];
        for (std::size_t c = 0; c < n_cols; c++)
            out.table[renum[p]][c] = renum[part[dfa.table[rep][c]]];
    }
    return out;
}

} // namespace

MonitorPtr compile_ltl(const LtlFormula& formula) {
    Compiler compiler;
    const Compiler::TopExpr top = compiler.decompose(formula);
    const std::vector<int> alphabet = compiler.realizable_observations();

    std::vector<ComponentDfa> components;
    components.reserve(compiler.units.size());
    for (const auto& unit : compiler.units) components.push_back(build_component(unit, alphabet));

    // product over components, reachable subset
    using Key = std::vector<int>;
    std::map<Key, int> ids;
    std::vector<Key> keys;
    auto intern = [&](const Key& k) {
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(keys.size());
        ids.emplace(k, id);
        keys.push_back(k);
        if (keys.size() > 4096) throw UnsupportedFragment("monitor product too large");
        return id;
    };
    Key start;
    for (const auto& c : components) start.push_back(c.start);
    intern(start);

    ProductDfa product;
    for (std::size_t cur = 0; cur < keys.size(); cur++) {
        const Key key = keys[cur];
        product.table.resize(keys.size());
        product.table[cur].assign(alphabet.size(), -1);
        for (std::size_t col = 0; col < alphabet.size(); col++) {
            Key next(key.size());
            for (std::size_t ci = 0; ci < components.size(); ci++)
                next[ci] = components[ci].table[key[ci]][col];
            product.table[cur][col] = intern(next);
        }
    }
    product.n_states = static_cast<int>(keys.size());
    product.table.resize(keys.size());
    product.start = 0;
    product.accept.resize(product.n_states);
    for (int i = 0; i < product.n_states; i++) {
        std::vector<bool> flags(components.size());
        for (std::size_t ci = 0; ci < components.size(); ci++)
            flags[ci] = components[ci].flag[keys[i][ci]];
        product.accept[i] = top.eval(flags);
    }

    const ProductDfa reduced = minimize(product);

    // Natural acceptance kind: a single positive temporal unit keeps its
    // reach/safety reading; anything with boolean structure uses the
    // limit-flag (Buchi) reading, which is what the sticky statuses encode.
    DeterministicMonitor::AcceptanceKind kind = DeterministicMonitor::AcceptanceKind::Buchi;
    if (top.op == Compiler::TopExpr::Op::Unit && compiler.units.size() == 1) {
        kind = compiler.units[0].kind == Compiler::UnitKind::Always
                   ? DeterministicMonitor::AcceptanceKind::Safe
                   : DeterministicMonitor::AcceptanceKind::Reach;
    }
    DeterministicMonitor::Acceptance acceptance{kind, reduced.accept};

    // column lookup per raw observation bitmask
    const int n_atoms = static_cast<int>(compiler.atoms.size());
    std::vector<int> col_of(static_cast<std::size_t>(1) << n_atoms, -1);
    for (std::size_t c = 0; c < alphabet.size(); c++) col_of[alphabet[c]] = static_cast<int>(c);

    auto atoms = compiler.atoms;
    auto table = reduced.table;
    auto step = [atoms, table, col_of](const Environment& env, int u, int s, int a,
                                       int s2) -> int {
        int mask = 0;
        for (std::size_t i = 0; i < atoms.size(); i++)
            if (atoms[i].matches(env.states[s], env.actions[a], env.states[s2]))
                mask |= 1 << i;
        const int col = col_of[mask];
        if (col < 0) throw SingularSystem("internal: unrealizable observation reached");
        return table[u][col];
    };
    return std::make_shared<DeterministicMonitor>(reduced.n_states, reduced.start, acceptance,
                                                  step);
}

// --- evaluation --------------------------------------------------------------

double eval_ltl(const Environment& env, const Policy& policy,
                const DeterministicMonitor& monitor) {
    validate_policy(env, policy);
    const int n = static_cast<int>(env.n_states());
    const int a = static_cast<int>(env.n_actions());
    const int m = monitor.n_states();
    const auto& acc = monitor.acceptance();
    using AK = DeterministicMonitor::AcceptanceKind;

    auto absorb_here = [&](int u) {
        if (acc.kind == AK::Reach) return static_cast<bool>(acc.set[u]);
        if (acc.kind == AK::Safe) return !acc.set[u];
        return false;
    };

    // reachable product states
    std::vector<int> id(static_cast<std::size_t>(n) * m, -1);
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int s, int u) {
        int& slot = id[static_cast<std::size_t>(s) * m + u];
        if (slot < 0) {
            slot = static_cast<int>(states.size());
            states.emplace_back(s, u);
        }
        return slot;
    };
    for (int s = 0; s < n; s++)
        if (env.initial[s] > 0.0) intern(s, monitor.start());
    for (std::size_t cur = 0; cur < states.size(); cur++) {
        const auto [s, u] = states[cur];
        if (absorb_here(u)) continue;
        for (int ai = 0; ai < a; ai++) {
            const double pa = policy.prob(s, ai);
            if (pa == 0.0) continue;
            for (int s2 = 0; s2 < n; s2++) {
                if (env.trans(s, ai, s2) <= 0.0) continue;
                intern(s2, monitor.step(env, u, s, ai, s2));
            }
        }
    }

    const int np = static_cast<int>(states.size());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(np, np);
    for (int i = 0; i < np; i++) {
        const auto [s, u] = states[i];
        if (absorb_here(u)) {
            p(i, i) = 1.0;
            continue;
        }
        for (int ai = 0; ai < a; ai++) {
            const double pa = policy.prob(s, ai);
            if (pa == 0.0) continue;
            for (int s2 = 0; s2 < n; s2++) {
                const double pt = env.trans(s, ai, s2);
                if (pt <= 0.0) continue;
                const int j = id[static_cast<std::size_t>(s2) * m + monitor.step(env, u, s, ai, s2)];
                p(i, j) += pa * pt;
            }
        }
    }

    const ChainDecomposition dec = chain_decomposition(InducedChain{p});
    auto class_accepts = [&](const std::vector<int>& cls) {
        switch (acc.kind) {
        case AK::Reach: {
            for (int i : cls)
                if (acc.set[states[i].second]) return true;
            return false;
        }
        case AK::Safe: {
            for (int i : cls)
                if (!acc.set[states[i].second]) return false;
            return true;
        }
        case AK::Buchi: {
            for (int i : cls)
                if (acc.set[states[i].second]) return true;
            return false;
        }
        case AK::CoBuchi: {
            for (int i : cls)
                if (acc.set[states[i].second]) return false;
            return true;
        }
        }
        return false;
    };

    double j = 0.0;
    for (int s = 0; s < n; s++) {
        if (env.initial[s] <= 0.0) continue;
        const int i0 = id[static_cast<std::size_t>(s) * m + monitor.start()];
        for (std::size_t ci = 0; ci < dec.classes.size(); ci++)
            if (class_accepts(dec.classes[ci])) j += env.initial[s] * dec.absorption(i0, ci);
    }
    return j;
}

double eval_ltl(const Environment& env, const Policy& policy, const LtlFormula& formula) {
    return eval_ltl(env, policy, *compile_ltl(formula));
}

double monitor_accepts_lasso(const Environment& env, const DeterministicMonitor& monitor,
                             const TrajectoryView& view) {
    const auto& acc = monitor.acceptance();
    using AK = DeterministicMonitor::AcceptanceKind;
    std::vector<bool> visited(monitor.n_states(), false);
    int u = monitor.start();
    visited[u] = true;
    for (const Transition& x : view.stem) {
        u = monitor.step(env, u, x.s, x.a, x.s2);
        visited[u] = true;
    }
    std::vector<bool> orbit(monitor.n_states(), false);
    if (!view.cycle.empty()) {
        // iterate the cycle until (monitor state, phase) repeats, then one
        // more full period marks the persistent orbit
        std::vector<std::vector<bool>> seen(monitor.n_states(),
                                            std::vector<bool>(view.cycle.size(), false));
        std::size_t phase = 0;
        while (!seen[u][phase]) {
            seen[u][phase] = true;
            const Transition& x = view.cycle[phase];
            u = monitor.step(env, u, x.s, x.a, x.s2);
            visited[u] = true;
            phase = (phase + 1) % view.cycle.size();
        }
        const int u_loop = u;
        const std::size_t phase_loop = phase;
        do {
            orbit[u] = true;
            const Transition& x = view.cycle[phase];
            u = monitor.step(env, u, x.s, x.a, x.s2);
            phase = (phase + 1) % view.cycle.size();
        } while (!(u == u_loop && phase == phase_loop));
    } else {
        orbit[u] = true; // truncated sample: judge by what was seen
    }

    switch (acc.kind) {
    case AK::Reach:
        for (int i = 0; i < monitor.n_states(); i++)
            if (visited[i] && acc.set[i]) return 1.0;
        return 0.0;
    case AK::Safe:
        for (int i = 0; i < monitor.n_states(); i++)
            if (visited[i] && !acc.set[i]) return 0.0;
        return 1.0;
    case AK::Buchi:
        for (int i = 0; i < monitor.n_states(); i++)
            if (orbit[i] && acc.set[i]) return 1.0;
        return 0.0;
    case AK::CoBuchi:
        for (int i = 0; i < monitor.n_states(); i++)
            if (orbit[i] && acc.set[i]) return 0.0;
        return 1.0;
    }
    return 0.0;
}

double formula_value_on_lasso(const Environment& env, const LtlFormula& formula,
                              const TrajectoryView& view) {
    return monitor_accepts_lasso(env, *compile_ltl(formula), view);
}

} // namespace objspec
