#pragma once

#include <span>
#include <vector>

#include "pacnav/geometry.hpp"
#include "pacnav/perception.hpp"

namespace pacnav {

/// Consecutive-column differences h[m] = H[m] - H[m+1], newest first.
/// Throws Error(kTooShort) for fewer than two columns.
std::vector<Vec2> displacements(const PathHistory& h);

/// Mean cosine between corresponding displacements of two observed paths
/// over their common prefix. Degenerate terms are skipped; 0 if none remain.
/// Throws Error(kTooShort) unless both histories have at least two columns.
double path_similarity(const PathHistory& h_j, const PathHistory& h_l);

/// Mean cosine between consecutive displacements of one observed path.
/// Degenerate terms are skipped; 0 if none remain. Throws Error(kTooShort)
/// below three columns.
double path_persistence(const PathHistory& h);

/// Mean pairwise velocity alignment over all ordered pairs; near-zero
/// velocities contribute 0. Requires at least two velocities.
double order_metric(std::span<const Vec2> velocities);

}  // namespace pacnav
