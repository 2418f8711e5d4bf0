#pragma once

#include <vector>

#include "pathcon/graph.hpp"

namespace pathcon {

// Mark assignment at the y endpoint of edge x--y; mark is Tail or Arrow.
struct OrientationAssignment {
    int x;
    int y;
    Mark mark;
};

struct PropagationOutcome {
    MixedGraph graph;
    bool conflict = false;
    // Assignments applied in order; on conflict the last entry is the one
    // that could not be applied.
    std::vector<OrientationAssignment> applied;
};

// Sets the mark at y on edge x--y (which must currently be Circle) and runs
// the class-appropriate rule closure: Meek R1-R4 for PDAGs, FCI R1-R3 for
// PAGs. For PDAGs the opposite endpoint is set too (edges are directed or
// undirected); for PAGs a Tail at y forces an Arrow at x (no undirected
// edges in the class).
PropagationOutcome apply_orientation(const MixedGraph& p, int x, int y, Mark m);

// Fixpoint of Meek's rules R1-R4 on a PDAG.
PropagationOutcome meek_closure(MixedGraph p);

// Fixpoint of FCI rules R1-R3 on a PAG. Incomplete: the result may admit
// completions outside the input's equivalence class, so exact checks stay at
// the circle-free leaves.
PropagationOutcome fci_closure(MixedGraph p);

}  // namespace pathcon
