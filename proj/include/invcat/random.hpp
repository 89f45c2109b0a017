#ifndef INVCAT_RANDOM_HPP
#define INVCAT_RANDOM_HPP

#include <optional>
#include <random>

#include "invcat/hom.hpp"

namespace invcat {

using Rng = std::mt19937_64;

/// Bounds for random finite-set instances.
struct RandomConfig {
  int max_objects = 3;
  int max_size = 3;  // elements per component
  int max_gamma = 2; // elements of base objects
};

WfPoset random_poset(Rng& rng, int max_elements, double edge_prob = 0.7);

/// A new finite set with a map onto `target`; every fiber is nonempty when
/// `surjective`. Returns nullopt if the size bound cannot be met.
std::optional<Map> random_over(Rng& rng, const Obj& target, bool surjective, int max_size,
                               const std::string& prefix);

/// A random finite-set inverse category built by extension along matching
/// objects; fibrant when `fibrant` (nonempty spaces, surjections onto
/// matching objects). Retries until the size bound is met.
InvCatPtr random_invcat(Rng& rng, const RandomConfig& cfg, bool fibrant = true);

/// A random diagram over gamma, Reedy fibrant when `fibrant`.
DiagramPtr random_diagram(Rng& rng, HomEngine& E, const Obj& gamma, const RandomConfig& cfg, bool fibrant = true);

/// A random Reedy fibration f : A -> B into the given diagram.
DiagramMap random_reedy_fibration(Rng& rng, HomEngine& E, const DiagramPtr& B, const RandomConfig& cfg);

/// An inverse category with two Reedy fibrant diagrams over random bases,
/// resampled as a whole until all components fit the size bound.
struct HomInstance {
  InvCatPtr I;
  std::unique_ptr<HomEngine> engine;
  DiagramPtr A, B;
};
HomInstance random_hom_instance(Rng& rng, const RandomConfig& cfg, bool fibrant = true);

/// A random truncated-simplicial inverse category with spaces drawn from a
/// pool (point, two points, Delta[1], its boundary, a horn, BC_2) and spans
/// given by products.
InvCatPtr random_sset_invcat(Rng& rng, int trunc, int max_objects = 3);

} // namespace invcat

#endif
