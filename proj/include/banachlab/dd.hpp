#pragma once

#include "banachlab/rat.hpp"

namespace banach {

// Vertex enumeration for {x in R^d : row_i . x <= 1}.  The polytope must be
// bounded with 0 in its interior (true for every unit ball we build); a
// recession direction is reported as an error.  Results are exact, sorted
// lexicographically.
std::vector<QVec> enumerate_vertices(const QMat& rows, int d);

// Facet functionals of conv(points) when 0 is interior: by polarity these
// are the vertices of {y : p_i . y <= 1}.
std::vector<QVec> facets_of_hull(const std::vector<QVec>& points, int d);

}  // namespace banach
