#pragma once

// Built-in catalog of small polyhedral (3-connected planar) graphs.

#include "quadric/graph.h"

#include <vector>

namespace quadric {

// Triangulations of the sphere with n >= 4 vertices, one per isomorphism class
// (mirror images identified).
std::vector<PlaneGraph> sphere_triangulations(int n);

// All 3-connected planar graphs with 4 <= n <= 8 vertices, one per
// isomorphism class, each with its embedding.
std::vector<PlaneGraph> polyhedral_graphs(int n);

PlaneGraph tetrahedron_graph();
PlaneGraph octahedron_graph();
PlaneGraph cube_graph();
// Bipartite with parts of sizes 8 and 6, hence without a Hamiltonian cycle.
PlaneGraph rhombic_dodecahedron_graph();

} // namespace quadric
