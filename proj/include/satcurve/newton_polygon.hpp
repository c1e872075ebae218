#pragma once

#include <map>
#include <utility>
#include <vector>

#include "satcurve/mpoly.hpp"
#include "satcurve/rational.hpp"

namespace satcurve {

/// Lattice point (i, j) of a support: i is the exponent of x, j of y.
using LatticePoint = std::pair<unsigned, unsigned>;

/// One compact edge of the local Newton polygon. Along the edge a root
/// y ~ c x^slope of f balances; `edge_poly[k]` is the coefficient of Z^k in
/// sum over edge points of a_ij Z^(j - to.second).
template <class C>
struct NewtonEdge {
  Rat slope;
  LatticePoint from, to;  // from has the larger j
  std::vector<C> edge_poly;
};

template <class C>
struct NewtonPolygon {
  std::vector<NewtonEdge<C>> edges;  // strictly increasing slopes
};

/// Compact edges of the lower-left convex hull of the support, from the
/// vertex of least x-exponent down to the vertex of least y-exponent.
template <class C>
NewtonPolygon<C> newton_polygon(const std::map<LatticePoint, C>& support) {
  NewtonPolygon<C> poly;
  if (support.empty()) return poly;
  // Lowest-i point per j, and the two extreme vertices.
  std::map<unsigned, unsigned> best;  // j -> min i
  for (const auto& [pt, c] : support) {
    auto it = best.find(pt.second);
    if (it == best.end() || pt.first < it->second) best[pt.second] = pt.first;
  }
  LatticePoint start{~0u, 0}, end{0, ~0u};
  for (const auto& [j, i] : best) {
    if (i < start.first || (i == start.first && j < start.second)) start = {i, j};
    if (j < end.second) end = {i, j};
  }
  LatticePoint cur = start;
  while (cur.second > end.second) {
    // Choose the next vertex minimizing the slope (di / dj); ties go to the
    // farthest point so that edges are maximal.
    bool have = false;
    LatticePoint nxt{};
    for (const auto& [j, i] : best) {
      if (j >= cur.second) continue;
      if (i < cur.first) continue;  // cannot happen on a lower-left hull
      if (!have) {
        nxt = {i, j};
        have = true;
        continue;
      }
      // compare (i - ci)/(cj - j) with (ni - ci)/(cj - nj)
      long lhs = static_cast<long>(i - cur.first) * static_cast<long>(cur.second - nxt.second);
      long rhs = static_cast<long>(nxt.first - cur.first) * static_cast<long>(cur.second - j);
      if (lhs < rhs || (lhs == rhs && j < nxt.second)) nxt = {i, j};
    }
    NewtonEdge<C> e;
    e.from = cur;
    e.to = nxt;
    e.slope = make_rat(static_cast<long>(nxt.first - cur.first), static_cast<long>(cur.second - nxt.second));
    e.edge_poly.assign(cur.second - nxt.second + 1, C(0));
    for (const auto& [pt, c] : support) {
      if (pt.second < nxt.second || pt.second > cur.second) continue;
      long lhs = static_cast<long>(pt.first) * static_cast<long>(cur.second - nxt.second) -
                 static_cast<long>(cur.first) * static_cast<long>(cur.second - nxt.second);
      long rhs = static_cast<long>(nxt.first - cur.first) * static_cast<long>(cur.second - pt.second);
      if (lhs == rhs) e.edge_poly[pt.second - nxt.second] = c;
    }
    poly.edges.push_back(std::move(e));
    cur = nxt;
  }
  return poly;
}

inline NewtonPolygon<Rat> newton_polygon(const BiPoly& f) {
  std::map<LatticePoint, Rat> support;
  for (const auto& [e, c] : f.terms()) support[{e[0], e[1]}] = c;
  return newton_polygon(support);
}

}  // namespace satcurve
