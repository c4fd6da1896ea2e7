#pragma once

#include "objspec/evaluate.hpp"
#include "objspec/injective.hpp"
#include "objspec/objective.hpp"

#include <vector>

namespace objspec {

/**
 * Rewrites an objective into a more expressive formalism so that both induce
 * the same policy ordering on the given environment. The supported directed
 * (source, target) edges are exactly the constructive inclusions; anything
 * else throws UnsupportedEdge.
 */
ObjectiveSpec embed(const ObjectiveSpec& source, Formalism target, const Environment& env);

struct EmbedEdge {
    Formalism source;
    Formalism target;
};

/// The seventeen supported constructive edges, in a fixed order.
const std::vector<EmbedEdge>& supported_embed_edges();

bool is_supported_embed_edge(Formalism source, Formalism target);

/// Exact discounted reward-machine return of a single trajectory.
double machine_return_on_view(const RewardMachine& machine, const TrajectoryView& view);

} // namespace objspec
