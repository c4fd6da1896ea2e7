#include "objspec/json_io.hpp"
#include "objspec/builtins.hpp"

namespace objspec {

namespace {

std::vector<std::string> string_list(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_array())
        throw ValidationError("missing or non-array field '" + key + "'");
    std::vector<std::string> out;
    for (const auto& item : j[key]) out.push_back(item.get<std::string>());
    return out;
}

std::pair<std::string, std::string> split_pair(const std::string& key) {
    const auto comma = key.find(',');
    if (comma == std::string::npos)
        throw ValidationError("transition key '" + key + "' is not of the form 's,a'");
    return {key.substr(0, comma), key.substr(comma + 1)};
}

} // namespace

Environment environment_from_json(const json& j) {
    Environment env;
    env.states = string_list(j, "states");
    env.actions = string_list(j, "actions");
    const std::size_t n = env.states.size(), a = env.actions.size();
    env.transition.assign(n, std::vector<std::vector<double>>(a, std::vector<double>(n, 0.0)));
    if (!j.contains("transition") || !j["transition"].is_object())
        throw ValidationError("missing or non-object field 'transition'");
    for (const auto& [key, row] : j["transition"].items()) {
        const auto [sname, aname] = split_pair(key);
        const int s = env.state_index(sname);
        const int ai = env.action_index(aname);
        if (!row.is_array()) throw ValidationError("transition row '" + key + "' is not an array");
        for (const auto& entry : row) {
            const int s2 = env.state_index(entry.at("to").get<std::string>());
            env.transition[s][ai][s2] += entry.at("p").get<double>();
        }
    }
    if (!j.contains("initial")) throw ValidationError("missing field 'initial'");
    if (j["initial"].is_array()) {
        env.initial = j["initial"].get<std::vector<double>>();
    } else if (j["initial"].is_object()) {
        env.initial.assign(n, 0.0);
        for (const auto& [sname, p] : j["initial"].items())
            env.initial[env.state_index(sname)] = p.get<double>();
    } else {
        throw ValidationError("'initial' must be an array or an object");
    }
    validate_environment(env);
    return env;
}

json environment_to_json(const Environment& env) {
    json j;
    j["states"] = env.states;
    j["actions"] = env.actions;
    json trans = json::object();
    for (std::size_t s = 0; s < env.n_states(); s++)
        for (std::size_t a = 0; a < env.n_actions(); a++) {
            json row = json::array();
            for (std::size_t s2 = 0; s2 < env.n_states(); s2++)
                if (env.transition[s][a][s2] > 0.0)
                    row.push_back({{"to", env.states[s2]}, {"p", env.transition[s][a][s2]}});
            trans[env.states[s] + "," + env.actions[a]] = std::move(row);
        }
    j["transition"] = std::move(trans);
    j["initial"] = env.initial;
    return j;
}

Policy policy_from_json(const json& j, const Environment& env) {
    Policy pi;
    const std::size_t n = env.n_states(), a = env.n_actions();
    pi.action_probs.assign(n, std::vector<double>(a, 0.0));
    if (!j.contains("action_probs"))
        throw ValidationError("missing field 'action_probs'");
    const json& ap = j["action_probs"];
    if (ap.is_array()) {
        const auto table = ap.get<std::vector<std::vector<double>>>();
        if (table.size() != n) throw DimensionMismatch("policy table has wrong state count");
        pi.action_probs = table;
    } else if (ap.is_object()) {
        for (const auto& [sname, row] : ap.items()) {
            const int s = env.state_index(sname);
            for (const auto& [aname, p] : row.items())
                pi.action_probs[s][env.action_index(aname)] = p.get<double>();
        }
    } else {
        throw ValidationError("'action_probs' must be an array or an object");
    }
    validate_policy(env, pi);
    return pi;
}

json policy_to_json(const Policy& policy, const Environment& env) {
    json ap = json::object();
    for (std::size_t s = 0; s < env.n_states(); s++) {
        json row = json::object();
        for (std::size_t a = 0; a < env.n_actions(); a++)
            if (policy.action_probs[s][a] > 0.0) row[env.actions[a]] = policy.action_probs[s][a];
        ap[env.states[s]] = std::move(row);
    }
    return json{{"action_probs", std::move(ap)}};
}

RewardFunction reward_from_json(const json& j, const Environment& env) {
    RewardFunction r = RewardFunction::zeros(env.n_states(), env.n_actions());
    if (!j.contains("entries") || !j["entries"].is_array())
        throw ValidationError("reward: missing or non-array field 'entries'");
    for (const auto& entry : j["entries"]) {
        const int s = env.state_index(entry.at("s").get<std::string>());
        const int a = env.action_index(entry.at("a").get<std::string>());
        const int s2 = env.state_index(entry.at("s'").get<std::string>());
        r.at(s, a, s2) = entry.at("r").get<double>();
    }
    return r;
}

json reward_to_json(const RewardFunction& reward, const Environment& env) {
    json entries = json::array();
    for (std::size_t s = 0; s < env.n_states(); s++)
        for (std::size_t a = 0; a < env.n_actions(); a++)
            for (std::size_t s2 = 0; s2 < env.n_states(); s2++)
                if (reward.values[s][a][s2] != 0.0)
                    entries.push_back({{"s", env.states[s]},
                                       {"a", env.actions[a]},
                                       {"s'", env.states[s2]},
                                       {"r", reward.values[s][a][s2]}});
    return json{{"entries", std::move(entries)}};
}

RewardMachine machine_from_json(const json& j, const Environment& env) {
    RewardMachine m;
    m.machine_states = string_list(j, "machine_states");
    const auto u_index = [&](const std::string& name) {
        for (std::size_t i = 0; i < m.machine_states.size(); i++)
            if (m.machine_states[i] == name) return static_cast<int>(i);
        throw ValidationError("unknown machine state: " + name);
    };
    m.start = u_index(j.at("start").get<std::string>());
    m.gamma = j.at("gamma").get<double>();

    const std::size_t nu = m.machine_states.size();
    const std::size_t n = env.n_states(), a = env.n_actions();
    m.delta_u.assign(nu, std::vector<std::vector<std::vector<int>>>(
                             n, std::vector<std::vector<int>>(a, std::vector<int>(n, -1))));
    if (!j.contains("delta_u") || !j["delta_u"].is_array())
        throw ValidationError("machine: missing or non-array field 'delta_u'");
    // first matching rule wins; wildcarded fields are omitted
    for (const auto& rule : j["delta_u"]) {
        const int to = u_index(rule.at("to").get<std::string>());
        const int ru = rule.contains("u") ? u_index(rule["u"].get<std::string>()) : -1;
        const int rs = rule.contains("s") ? env.state_index(rule["s"].get<std::string>()) : -1;
        const int ra = rule.contains("a") ? env.action_index(rule["a"].get<std::string>()) : -1;
        const int rs2 = rule.contains("s'") ? env.state_index(rule["s'"].get<std::string>()) : -1;
        for (std::size_t u = 0; u < nu; u++) {
            if (ru >= 0 && static_cast<int>(u) != ru) continue;
            for (std::size_t s = 0; s < n; s++) {
                if (rs >= 0 && static_cast<int>(s) != rs) continue;
                for (std::size_t ai = 0; ai < a; ai++) {
                    if (ra >= 0 && static_cast<int>(ai) != ra) continue;
                    for (std::size_t s2 = 0; s2 < n; s2++) {
                        if (rs2 >= 0 && static_cast<int>(s2) != rs2) continue;
                        if (m.delta_u[u][s][ai][s2] < 0) m.delta_u[u][s][ai][s2] = to;
                    }
                }
            }
        }
    }
    for (std::size_t u = 0; u < nu; u++)
        for (std::size_t s = 0; s < n; s++)
            for (std::size_t ai = 0; ai < a; ai++)
                for (std::size_t s2 = 0; s2 < n; s2++)
                    if (m.delta_u[u][s][ai][s2] < 0)
                        throw ValidationError("delta_u is not total: no rule for (" +
                                              m.machine_states[u] + "," + env.states[s] + "," +
                                              env.actions[ai] + "," + env.states[s2] + ")");

    m.delta_r.assign(nu, std::vector<RewardFunction>(
                             nu, RewardFunction::zeros(env.n_states(), env.n_actions())));
    if (j.contains("delta_r")) {
        for (const auto& rule : j["delta_r"]) {
            const int from = u_index(rule.at("from").get<std::string>());
            const int to = u_index(rule.at("to").get<std::string>());
            m.delta_r[from][to] = reward_from_json(rule.at("reward"), env);
        }
    }
    return m;
}

ObjectiveSpec objective_from_json(const json& j, const Environment& env) {
    const std::string type = j.at("type").get<std::string>();
    auto gamma_of = [&](const json& spec) { return spec.at("gamma").get<double>(); };
    if (type == "mr") return MrSpec{reward_from_json(j.at("reward"), env), gamma_of(j)};
    if (type == "lar") return LarSpec{reward_from_json(j.at("reward"), env)};
    if (type == "ltl") return LtlSpec{parse_ltl(j.at("formula").get<std::string>()), nullptr};
    if (type == "rm") return RmSpec{machine_from_json(j.at("machine"), env)};
    if (type == "onmr")
        return OnmrSpec{reward_from_json(j.at("reward"), env),
                        builtin_scalar_fn(j.at("wrapper").get<std::string>()), gamma_of(j)};
    if (type == "inmr")
        return InmrSpec{reward_from_json(j.at("reward"), env),
                        builtin_scalar_fn(j.at("wrapper").get<std::string>()), gamma_of(j)};
    if (type == "rrl")
        return RrlSpec{reward_from_json(j.at("reward"), env), j.at("alpha").get<double>(),
                       builtin_regularizer(j.at("regularizer").get<std::string>()), gamma_of(j)};
    if (type == "omorl" || type == "imorl" || type == "gomorl") {
        std::vector<RewardFunction> rewards;
        for (const auto& rj : j.at("rewards")) rewards.push_back(reward_from_json(rj, env));
        if (type == "omorl")
            return OmorlSpec{std::move(rewards),
                             builtin_vector_fn(j.at("wrapper").get<std::string>()), gamma_of(j)};
        if (type == "imorl")
            return ImorlSpec{std::move(rewards),
                             builtin_vector_fn(j.at("wrapper").get<std::string>()), gamma_of(j)};
        return GomorlSpec{std::move(rewards), gamma_of(j),
                          builtin_vector_preorder(j.at("preorder").get<std::string>())};
    }
    if (type == "fomr") {
        // built-in occupancy wrappers: total-mass, entropy over normalized mass
        const std::string name = j.at("wrapper").get<std::string>();
        OccupancyFn f;
        if (name == "total-mass")
            f = [](const OccupancyMeasure& m) { return m.total_mass(); };
        else if (name == "entropy")
            f = [](const OccupancyMeasure& m) {
                std::vector<double> normalized(m.values);
                const double total = m.total_mass();
                for (double& v : normalized) v /= total;
                return shannon_entropy(normalized);
            };
        else
            throw ValidationError("unknown occupancy wrapper: " + name);
        return FomrSpec{std::move(f), gamma_of(j)};
    }
    throw ValidationError("unknown objective type: " + type);
}

} // namespace objspec
