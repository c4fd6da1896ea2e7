#include "objspec/hasse.hpp"
#include "objspec/json_io.hpp"
#include "objspec/separations.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace objspec;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitCapabilityError = 3;
constexpr int kExitCheckFailure = 4;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

/// Bundled fixture, with the environment optionally overridden from
/// $OBJSPEC_FIXTURE_DIR/<name>.json ({"environment": {...}}).
SeparationFixture resolve_fixture(const std::string& name) {
    SeparationFixture f = fixture(name);
    if (const char* dir = std::getenv("OBJSPEC_FIXTURE_DIR")) {
        const std::filesystem::path path = std::filesystem::path(dir) / (name + ".json");
        if (std::filesystem::exists(path)) {
            const json j = read_json_file(path.string());
            if (j.contains("environment"))
                f.env = environment_from_json(j["environment"]);
        }
    }
    return f;
}

struct Options {
    std::string env_path, policy_path, objective, fixture_name, policy_name;
    std::string format = "text";
    double gamma = -1.0;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    std::size_t mc_samples = 0; ///< 0 = exact evaluation
    std::size_t mc_horizon = 200;
    bool dump_trajectories = false;
    int prefix_depth = -1;
};

json lasso_to_json(const Environment& env, const Lasso& lasso, double value) {
    auto steps_json = [&](const std::vector<Transition>& steps) {
        json out = json::array();
        for (const Transition& x : steps)
            out.push_back({{"s", env.states[x.s]},
                           {"a", env.actions[x.a]},
                           {"s'", env.states[x.s2]}});
        return out;
    };
    return json{{"stem", steps_json(lasso.stem)},
                {"cycle", steps_json(lasso.cycle)},
                {"probability", lasso.probability},
                {"value", value}};
}

int cmd_eval(const Options& opt) {
    Environment env;
    Policy policy;
    std::optional<SeparationFixture> fix;
    if (!opt.fixture_name.empty()) {
        fix = resolve_fixture(opt.fixture_name);
        env = fix->env;
    } else if (!opt.env_path.empty()) {
        env = environment_from_json(read_json_file(opt.env_path));
    } else {
        std::cerr << "eval: provide --env or --fixture\n";
        return kExitInputError;
    }
    const bool comparing = opt.policy_name.find(',') != std::string::npos;
    if (!opt.policy_path.empty()) {
        policy = policy_from_json(read_json_file(opt.policy_path), env);
    } else if (fix && !opt.policy_name.empty() && !comparing) {
        policy = fix->policy(opt.policy_name);
    } else if (!comparing) {
        std::cerr << "eval: provide --policy (a file, or a fixture policy name)\n";
        return kExitInputError;
    }

    ObjectiveSpec spec = [&]() -> ObjectiveSpec {
        if (fix && fix->named_specs.count(opt.objective)) return fix->spec(opt.objective);
        json j = read_json_file(opt.objective);
        if (opt.gamma >= 0.0 && j.is_object() && j.contains("gamma")) j["gamma"] = opt.gamma;
        return objective_from_json(j, env);
    }();

    if (opt.prefix_depth >= 0) {
        // prefix-distribution report, one JSON line per prefix
        const PrefixDistribution dist = prefix_distribution(env, policy, opt.prefix_depth);
        for (const auto& [prefix, prob] : dist.probs) {
            json line{{"start", env.states[prefix.start]}, {"p", prob}};
            json steps = json::array();
            for (const Transition& x : prefix.steps)
                steps.push_back({{"s", env.states[x.s]},
                                 {"a", env.actions[x.a]},
                                 {"s'", env.states[x.s2]}});
            line["steps"] = std::move(steps);
            std::cout << line.dump() << "\n";
        }
        return kExitOk;
    }

    const Formalism f = formalism_of(spec);
    if (comparing && has_scalar_eval(f)) {
        std::cerr << "eval: scalar formalisms take a single policy\n";
        return kExitInputError;
    }
    json out;
    out["formalism"] = to_string(f);
    if (opt.dump_trajectories) {
        // lasso report, one JSON line per trajectory; trajectory objectives
        // also report their value on each lasso
        for (const Lasso& lasso : enumerate_lassos(env, policy)) {
            json line = lasso_to_json(env, lasso, 0.0);
            if (const auto* ftr = std::get_if<FtrSpec>(&spec)) line["value"] = ftr->f(view_of(lasso));
            else line.erase("value");
            std::cout << line.dump() << "\n";
        }
        return kExitOk;
    }
    if (has_scalar_eval(f)) {
        if (opt.mc_samples > 0 && is_trajectory_formalism(f)) {
            MonteCarlo mc;
            mc.samples = opt.mc_samples;
            mc.horizon = opt.mc_horizon;
            mc.seed = opt.seed;
            McMetadata meta;
            out["J"] = eval_trajectory_monte_carlo(env, policy, spec, mc, &meta);
            out["std_error"] = meta.std_error;
            out["samples"] = meta.samples;
            out["horizon"] = meta.horizon;
            if (meta.bias_bound) out["bias_bound"] = *meta.bias_bound;
            else out["bias"] = "unbounded";
        } else {
            out["J"] = evaluate(env, policy, spec);
        }
    } else {
        // preorder formalisms report a comparison against a second policy
        if (opt.policy_name.empty() || !fix) {
            std::cerr << "eval: ordering formalisms need two fixture policies "
                         "(--policy NAME1,NAME2)\n";
            return kExitInputError;
        }
        const auto comma = opt.policy_name.find(',');
        if (comma == std::string::npos) {
            std::cerr << "eval: ordering formalisms need --policy NAME1,NAME2\n";
            return kExitInputError;
        }
        const Policy& p1 = fix->policy(opt.policy_name.substr(0, comma));
        const Policy& p2 = fix->policy(opt.policy_name.substr(comma + 1));
        const Ordering ord = compare(env, p1, p2, spec);
        out["comparison"] = ord == Ordering::Less    ? "less"
                            : ord == Ordering::Greater ? "greater"
                                                      : "equal";
    }
    if (opt.format == "json") std::cout << out.dump(2) << "\n";
    else if (out.contains("J")) std::cout << "J = " << out["J"].get<double>() << "\n";
    else std::cout << "comparison: " << out["comparison"].get<std::string>() << "\n";
    return kExitOk;
}

int cmd_check(const Options& opt) {
    if (opt.fixture_name.empty()) {
        std::cerr << "check: provide --fixture NAME\n";
        return kExitInputError;
    }
    const SeparationFixture fix = resolve_fixture(opt.fixture_name);
    const SeparationReport report = run_separation(fix);
    if (opt.format == "json") {
        std::cout << report.to_json().dump(2) << "\n";
    } else {
        for (const CheckResult& c : report.checks)
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.claim << " (expected " << c.expected
                      << ", computed " << c.computed << ")\n";
        std::cout << (report.pass ? "PASS " : "FAIL ") << report.fixture << "\n";
    }
    return report.pass ? kExitOk : kExitCheckFailure;
}

int cmd_hasse(const Options& opt) {
    const VerificationReport report = verify_all();
    if (opt.format == "dot") {
        std::cout << emit_dot(derive_hasse(relation_table()));
    } else if (opt.format == "json") {
        std::cout << report.to_json().dump(2) << "\n";
    } else {
        const HasseGraph graph = derive_hasse(relation_table());
        std::cout << graph.classes.size() << " expressivity classes\n";
        for (const auto& cls : graph.classes) {
            std::cout << "  {";
            for (std::size_t k = 0; k < cls.size(); k++)
                std::cout << (k ? ", " : "") << to_string(cls[k]);
            std::cout << "}\n";
        }
        std::cout << "verification failures: " << report.failures << "\n";
    }
    return report.failures == 0 ? kExitOk : kExitCheckFailure;
}

int cmd_list_fixtures(const Options& opt) {
    if (opt.format == "json") {
        json out = json::array();
        for (const SeparationFixture& f : fixtures()) {
            json claims = json::array();
            for (const SeparationClaim& c : f.claims)
                claims.push_back({{"formalism", to_string(c.formalism)},
                                  {"can_express", c.can_express},
                                  {"proof_ref", c.proof_ref}});
            json specs = json::array();
            for (const auto& [name, _] : f.named_specs) specs.push_back(name);
            out.push_back({{"name", f.name},
                           {"states", f.env.states},
                           {"policies", f.policy_names},
                           {"objectives", specs},
                           {"claims", claims}});
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const SeparationFixture& f : fixtures()) {
            std::cout << f.name << ": " << f.env.n_states() << " states, "
                      << f.policies.size() << " policies;";
            for (const SeparationClaim& c : f.claims)
                std::cout << " " << to_string(c.formalism) << (c.can_express ? "+" : "-");
            std::cout << "\n";
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact evaluation and expressivity analysis for RL objective formalisms"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "Output format: json, text or dot");
        cmd->add_option("--seed", opt.seed, "Random seed for sampled paths");
        cmd->add_option("--tolerance", opt.tolerance, "Numeric tolerance for checks");
    };

    CLI::App* eval = app.add_subcommand("eval", "Evaluate an objective on a policy");
    eval->add_option("--env", opt.env_path, "Environment JSON file");
    eval->add_option("--policy-file", opt.policy_path, "Policy JSON file");
    eval->add_option("--policy", opt.policy_name, "Fixture policy name (or NAME1,NAME2)");
    eval->add_option("--objective", opt.objective, "Objective JSON file or fixture objective name")
        ->required();
    eval->add_option("--fixture", opt.fixture_name, "Bundled fixture name");
    eval->add_option("--gamma", opt.gamma, "Discount override for file objectives");
    eval->add_option("--mc-samples", opt.mc_samples,
                     "Sample count for Monte Carlo trajectory evaluation (0 = exact)");
    eval->add_option("--mc-horizon", opt.mc_horizon, "Truncation horizon for Monte Carlo");
    eval->add_flag("--trajectories", opt.dump_trajectories,
                   "Print the lasso enumeration as JSON lines instead of evaluating");
    eval->add_option("--prefixes", opt.prefix_depth,
                     "Print the depth-k prefix distribution as JSON lines");
    add_common(eval);

    CLI::App* check = app.add_subcommand("check", "Replay a separation fixture's claims");
    check->add_option("--fixture", opt.fixture_name, "Fixture name")->required();
    add_common(check);

    CLI::App* hasse = app.add_subcommand("hasse", "Verify the relation and emit the diagram");
    add_common(hasse);

    CLI::App* list = app.add_subcommand("list-fixtures", "List bundled fixtures");
    add_common(list);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (eval->parsed()) return cmd_eval(opt);
        if (check->parsed()) return cmd_check(opt);
        if (hasse->parsed()) return cmd_hasse(opt);
        if (list->parsed()) return cmd_list_fixtures(opt);
    } catch (const UnsupportedFragment& e) {
        std::cerr << "error: " << e.what()
                  << "\nhint: supply a deterministic monitor for formulas outside the fragment\n";
        return kExitCapabilityError;
    } catch (const NotLassoEnumerable& e) {
        std::cerr << "error: " << e.what()
                  << "\nhint: this instance has infinitely many trajectories; use a Monte Carlo "
                     "evaluation\n";
        return kExitCapabilityError;
    } catch (const UnknownFixture& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
