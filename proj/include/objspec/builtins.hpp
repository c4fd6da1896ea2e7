#pragma once

#include "objspec/objective.hpp"

#include <string>

namespace objspec {

/// Named scalar wrappers usable from the CLI: identity, abs, threshold(c), negate.
ScalarFn builtin_scalar_fn(const std::string& name);

/// Shannon entropy of an action distribution (natural log; 0 log 0 = 0).
double shannon_entropy(const std::vector<double>& dist);

/// Number of actions assigned probability exactly zero.
double support_count_zeros(const std::vector<double>& dist);

/// Named regularizers: entropy, support-count.
ActionDistFn builtin_regularizer(const std::string& name);

/// Named vector wrappers: sum, first, max.
VectorFn builtin_vector_fn(const std::string& name);

/// Lexicographic total preorder on R^k.
Ordering lexicographic_compare(const std::vector<double>& v1, const std::vector<double>& v2);

VectorPreorder lexicographic_preorder();

/// Total preorder on reals induced by crossing a threshold: 1[x >= c] levels.
RealPreorder threshold_preorder(double c);

/// Preorder induced by a scalar function: v1 >= v2 iff f(v1) >= f(v2).
VectorPreorder preorder_from_function(VectorFn f);

/// Named vector preorders: lexicographic, sum-induced, first-induced.
VectorPreorder builtin_vector_preorder(const std::string& name);

/// Exact-table-match policy value: 1 for the given policy, 0 otherwise.
PolicyFn indicator_policy_fn(Policy target);

} // namespace objspec
