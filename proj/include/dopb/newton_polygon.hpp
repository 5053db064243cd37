#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <utility>
#include <vector>

#include "dopb/rational.hpp"

namespace dopb {

struct PolygonEdge {
  Rational slope;  // >= 0
  int length = 0;  // horizontal length

  friend bool operator==(const PolygonEdge& a, const PolygonEdge& b) { return a.slope == b.slope && a.length == b.length; }
};

/// Lower-left boundary of the convex hull of the support, extended by the
/// quadrant {(-a, +b)}; drawn on [0, order]. Slopes increase strictly along
/// the edges and the last vertex sits at abscissa `order`.
struct NewtonPolygon {
  std::vector<std::pair<int, int>> vertices;
  std::vector<PolygonEdge> edges;

  int order() const { return vertices.empty() ? -1 : vertices.back().first; }
  int base_height() const { return vertices.empty() ? 0 : vertices.front().second; }
  Rational largest_slope() const { return edges.empty() ? Rational(0) : edges.back().slope; }
  /// Horizontal length of the slope-0 edge.
  int flat_length() const { return (!edges.empty() && edges.front().slope == 0) ? edges.front().length : 0; }

  friend bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) {
    return a.vertices == b.vertices && a.edges == b.edges;
  }
};

/// heights[x] is the least ordinate of a support point with abscissa x
/// (nullopt when the column is empty). The last column must be nonempty.
inline NewtonPolygon lower_left_hull(const std::vector<std::optional<int>>& heights) {
  NewtonPolygon poly;
  const int order = static_cast<int>(heights.size()) - 1;
  if (order < 0 || !heights.back()) return poly;
  int ymin = INT_MAX, kstar = 0;
  for (int x = 0; x <= order; ++x) {
    if (!heights[static_cast<std::size_t>(x)]) continue;
    const int y = *heights[static_cast<std::size_t>(x)];
    if (y <= ymin) {
      ymin = y;
      kstar = x;
    }
  }
  poly.vertices.emplace_back(0, ymin);
  if (kstar > 0) {
    poly.vertices.emplace_back(kstar, ymin);
    poly.edges.push_back({Rational(0), kstar});
  }
  int cx = kstar, cy = ymin;
  while (cx < order) {
    std::optional<Rational> best;
    int bx = -1;
    for (int x = cx + 1; x <= order; ++x) {
      if (!heights[static_cast<std::size_t>(x)]) continue;
      Rational s(*heights[static_cast<std::size_t>(x)] - cy, x - cx);
      s.canonicalize();
      if (!best || s <= *best) {
        best = s;
        bx = x;
      }
    }
    const int by = *heights[static_cast<std::size_t>(bx)];
    poly.vertices.emplace_back(bx, by);
    poly.edges.push_back({*best, bx - cx});
    cx = bx;
    cy = by;
  }
  return poly;
}

/// Minkowski sum: base heights add, edges merge by slope.
inline NewtonPolygon minkowski_sum(const NewtonPolygon& a, const NewtonPolygon& b) {
  std::vector<PolygonEdge> all = a.edges;
  all.insert(all.end(), b.edges.begin(), b.edges.end());
  std::sort(all.begin(), all.end(), [](const PolygonEdge& l, const PolygonEdge& r) { return l.slope < r.slope; });
  std::vector<PolygonEdge> merged;
  for (const auto& e : all) {
    if (!merged.empty() && merged.back().slope == e.slope)
      merged.back().length += e.length;
    else
      merged.push_back(e);
  }
  NewtonPolygon out;
  int x = 0;
  Rational y = a.base_height() + b.base_height();
  out.vertices.emplace_back(x, static_cast<int>(y.get_num().get_si()));
  for (const auto& e : merged) {
    x += e.length;
    y += e.slope * e.length;
    out.vertices.emplace_back(x, static_cast<int>(floor_of(y).get_si()));
  }
  out.edges = std::move(merged);
  return out;
}

}  // namespace dopb
