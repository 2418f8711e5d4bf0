#pragma once

#include <functional>
#include <set>
#include <vector>

#include "pathcon/graph.hpp"

namespace pathcon {

struct LatentSpec {
    std::set<int> hidden;
};

// Same skeleton, v-structure arrowheads oriented, Meek closure applied;
// everything else left as the symmetric circle pair (undirected).
MixedGraph dag_to_cpdag(const MixedGraph& d);

// Standard latent projection onto the observed vertices: adjacency by
// inducing path relative to the hidden set, marks by ancestry in d.
MixedGraph latent_project(const MixedGraph& d, const LatentSpec& l);

// Identity embedding.
MixedGraph dag_to_mag(const MixedGraph& d);

// Brute force: enumerates every MAG over m's skeleton, keeps the ones Markov
// equivalent to m, and intersects their marks. Throws ResourceError when the
// skeleton has more than `max_positions` endpoint positions.
MixedGraph mag_to_pag(const MixedGraph& m, int max_positions = 20);

// Inducing path between a and b relative to `hidden`: every intermediate
// vertex is hidden or a collider, and every collider is an ancestor of a or b.
bool has_inducing_path(const MixedGraph& d, int a, int b, const std::set<int>& hidden);

// Enumerates every orientation of the skeleton of `m` into ->, <- or <->
// edges that forms an ancestral graph (no directed or almost directed
// cycles); calls fn for each. Subject to the same position cap.
void for_each_ancestral_orientation(const MixedGraph& m,
                                    const std::function<void(const MixedGraph&)>& fn,
                                    int max_positions = 20);

}  // namespace pathcon
