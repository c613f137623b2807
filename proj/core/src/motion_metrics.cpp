#include "pacnav/motion_metrics.hpp"

#include <algorithm>
#include <string>

#include "pacnav/error.hpp"

namespace pacnav {

namespace {

double mean_of_valid(std::size_t count, auto&& term) {
  double sum = 0.0;
  std::size_t valid = 0;
  for (std::size_t m = 0; m < count; ++m) {
    if (const auto c = term(m)) {
      sum += *c;
      ++valid;
    }
  }
  return valid == 0 ? 0.0 : sum / static_cast<double>(valid);
}

}  // namespace

std::vector<Vec2> displacements(const PathHistory& h) {
  if (h.size() < 2) {
    throw Error(ErrorCode::kTooShort,
                "displacements need 2 columns, history has " + std::to_string(h.size()));
  }
  std::vector<Vec2> out(h.size() - 1);
  for (std::size_t m = 0; m + 1 < h.size(); ++m) {
    out[m] = h.position(m) - h.position(m + 1);
  }
  return out;
}

double path_similarity(const PathHistory& h_j, const PathHistory& h_l) {
  const std::size_t len = std::min(h_j.size(), h_l.size());
  if (len < 2) {
    throw Error(ErrorCode::kTooShort, "similarity needs 2 columns in both histories");
  }
  return mean_of_valid(len - 1, [&](std::size_t m) {
    return normalized_dot(h_j.position(m) - h_j.position(m + 1),
                          h_l.position(m) - h_l.position(m + 1));
  });
}

double path_persistence(const PathHistory& h) {
  if (h.size() < 3) {
    throw Error(ErrorCode::kTooShort,
                "persistence needs 3 columns, history has " + std::to_string(h.size()));
  }
  const std::vector<Vec2> d = displacements(h);
  return mean_of_valid(d.size() - 1,
                       [&](std::size_t m) { return normalized_dot(d[m + 1], d[m]); });
}

double order_metric(std::span<const Vec2> velocities) {
  const std::size_t n = velocities.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "order metric needs at least two agents");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // the cosine is symmetric, so each unordered pair counts twice
      sum += 2.0 * normalized_dot(velocities[i], velocities[j]).value_or(0.0);
    }
  }
  return sum / static_cast<double>(n * (n - 1));
}

}  // namespace pacnav
