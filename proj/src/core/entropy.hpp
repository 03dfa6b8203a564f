#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ants {

// Which entropy regularizer the planner runs under.  Shannon pairs with
// log-sum-exp values and softmax policies; Tsallis (degree 2) pairs with the
// sparsemax projection and sparse policies.
enum class EntropyKind { shannon, tsallis2 };

// Regularized value of a score vector: max over the simplex of
// p.q + tau * H(p).  Closed form: tau * logsumexp(q / tau) for Shannon,
// the sparsemax dual value for Tsallis-2.
// Throws std::domain_error for tau < 1e-12 or empty q.
double soft_value(std::span<const double> q, EntropyKind kind, double tau);

// The maximizing policy of soft_value: softmax(q / tau) or sparsemax(q / tau).
// Invariant under shifting q by a constant (bit-exact when the shifted inputs
// are exactly representable, since max(q) is subtracted before scaling).
std::vector<double> soft_policy(std::span<const double> q, EntropyKind kind, double tau);

// H(p).  Shannon: -sum p ln p with 0 ln 0 := 0.  Tsallis-2: (1 - sum p^2)/2.
double entropy(std::span<const double> probs, EntropyKind kind);

// Entropy of the uniform distribution over k actions: ln k, or (1 - 1/k)/2.
// Throws std::domain_error for k = 0.
double max_entropy(EntropyKind kind, std::size_t k);

}  // namespace ants
