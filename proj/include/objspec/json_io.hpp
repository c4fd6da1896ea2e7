#pragma once

#include "objspec/ltl.hpp"
#include "objspec/mdp.hpp"
#include "objspec/objective.hpp"

#include <json.hpp>

#include <string>

namespace objspec {

using nlohmann::json;

/**
 * Environment schema:
 * {"states":[...], "actions":[...],
 *  "transition":{"s,a":[{"to":"s'","p":0.5}, ...], ...},
 *  "initial":[...]}
 * Unlisted (s,a) rows and targets default to probability zero and are
 * rejected by validation unless the row is fully specified.
 */
Environment environment_from_json(const json& j);
json environment_to_json(const Environment& env);

/// Policy schema: {"action_probs": {"s": {"a": p, ...}, ...}} or a dense table.
Policy policy_from_json(const json& j, const Environment& env);
json policy_to_json(const Policy& policy, const Environment& env);

/// Reward schema: {"entries":[{"s":..,"a":..,"s'":..,"r":..}, ...]}; unlisted = 0.
RewardFunction reward_from_json(const json& j, const Environment& env);
json reward_to_json(const RewardFunction& reward, const Environment& env);

/**
 * Reward machine schema:
 * {"machine_states":[...], "start":"u0",
 *  "delta_u":[{"u":"u0","s":"s0","a":"a0","s'":"s1","to":"u1"}, ...],
 *  "delta_r":[{"from":"u0","to":"u1","reward":{...}}, ...],
 *  "gamma":0.9}
 * delta_u entries may omit u/s/a/s' as wildcards; the first matching entry
 * wins, and the table must come out total.
 */
RewardMachine machine_from_json(const json& j, const Environment& env);

/// Objective file: {"type": "mr"|"lar"|"ltl"|"rm"|"onmr"|"rrl"|"omorl"|"gomorl"|"fomr", ...}.
ObjectiveSpec objective_from_json(const json& j, const Environment& env);

} // namespace objspec
