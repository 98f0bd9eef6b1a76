#pragma once

#include <array>
#include <vector>

#include "chsh_atlas/beliefs.hpp"
#include "chsh_atlas/rational.hpp"

namespace chsh {

/// One vertex of the local marginal polytope, as exact rationals. Entry
/// order: pairs (12, 14, 32, 34), each row-major (00, 01, 10, 11).
using LmVertexExact = std::array<Rational, 16>;

/// Exact vertex enumeration of LM(K) by double description over the
/// homogenization cone; deterministic lexicographic output order.
std::vector<LmVertexExact> lm_vertices_exact();

/// Same vertices as BeliefCollections (entries are exactly representable
/// doubles), singles derived from the pairwise matrices.
std::vector<BeliefCollection> lm_vertices();

/// Exact LM(K) membership test for a rational point (tolerance zero).
bool lm_member_exact(const LmVertexExact& v);

}  // namespace chsh
