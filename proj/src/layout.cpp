#include "graphsal/layout.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "graphsal/rng.hpp"

namespace graphsal {

std::vector<std::vector<int>> find_rings(const MolecularGraph& graph, int max_size) {
  std::set<std::vector<int>> rings;
  for (int b = 0; b < graph.bond_count(); ++b) {
    const Bond& bond = graph.bond(b);
    // shortest path between the endpoints avoiding the bond itself
    std::vector<int> parent(graph.atom_count(), -2);
    std::vector<int> queue{bond.i};
    parent[bond.i] = -1;
    while (!queue.empty()) {
      std::vector<int> next;
      for (int at : queue)
        for (const auto& [nb, bond_idx] : graph.neighbors(at)) {
          if (bond_idx == b || parent[nb] != -2) continue;
          parent[nb] = at;
          next.push_back(nb);
        }
      queue = std::move(next);
      if (parent[bond.j] != -2) break;
    }
    if (parent[bond.j] == -2) continue;
    std::vector<int> cycle;
    for (int at = bond.j; at != -1; at = parent[at]) cycle.push_back(at);
    if (static_cast<int>(cycle.size()) > max_size) continue;
    std::sort(cycle.begin(), cycle.end());
    rings.insert(std::move(cycle));
  }
  return {rings.begin(), rings.end()};
}

std::vector<Point> layout_2d(const MolecularGraph& graph) {
  const int n = graph.atom_count();
  std::vector<Point> pos(static_cast<size_t>(n));
  if (n == 1) return pos;

  const double bond_length = 1.0;
  const double tau = 6.283185307179586476925286766559;

  // circle start with deterministic per-atom jitter
  Rng rng(0x5eedULL + static_cast<uint64_t>(n));
  const double r0 = std::max(1.0, bond_length * n / tau);
  for (int i = 0; i < n; ++i) {
    const double angle = tau * i / n;
    pos[i].x = r0 * std::cos(angle) + rng.uniform(-0.05, 0.05);
    pos[i].y = r0 * std::sin(angle) + rng.uniform(-0.05, 0.05);
  }

  const auto rings = find_rings(graph, 8);

  const int iterations = 400;
  std::vector<Point> force(static_cast<size_t>(n));
  for (int it = 0; it < iterations; ++it) {
    for (auto& f : force) f = Point{};

    // springs along bonds
    for (const Bond& b : graph.bonds()) {
      const double dx = pos[b.j].x - pos[b.i].x;
      const double dy = pos[b.j].y - pos[b.i].y;
      const double d = std::max(1e-6, std::hypot(dx, dy));
      const double pull = 0.5 * (d - bond_length) / d;
      force[b.i].x += pull * dx;
      force[b.i].y += pull * dy;
      force[b.j].x -= pull * dx;
      force[b.j].y -= pull * dy;
    }

    // all-pairs repulsion
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double dx = pos[j].x - pos[i].x;
        double dy = pos[j].y - pos[i].y;
        double d2 = dx * dx + dy * dy;
        if (d2 < 1e-12) { // coincident points: deterministic nudge
          dx = 1e-3 * (i + 1);
          dy = 1e-3 * (j + 1);
          d2 = dx * dx + dy * dy;
        }
        const double push = 0.35 * bond_length * bond_length / d2;
        const double d = std::sqrt(d2);
        force[i].x -= push * dx / d;
        force[i].y -= push * dy / d;
        force[j].x += push * dx / d;
        force[j].y += push * dy / d;
      }

    // rings pulled to their regular polygon radius
    for (const auto& ring : rings) {
      const double m = static_cast<double>(ring.size());
      const double target = bond_length / (2.0 * std::sin(tau / (2.0 * m)));
      double cx = 0.0, cy = 0.0;
      for (int a : ring) {
        cx += pos[a].x;
        cy += pos[a].y;
      }
      cx /= m;
      cy /= m;
      for (int a : ring) {
        const double dx = pos[a].x - cx;
        const double dy = pos[a].y - cy;
        const double d = std::max(1e-6, std::hypot(dx, dy));
        const double pull = 0.35 * (target - d) / d;
        force[a].x += pull * dx;
        force[a].y += pull * dy;
      }
    }

    const double step = 0.12 * (1.0 - static_cast<double>(it) / iterations) + 0.02;
    for (int i = 0; i < n; ++i) {
      // clamp per-step motion to keep the relaxation stable
      const double fx = std::clamp(force[i].x, -1.0, 1.0);
      const double fy = std::clamp(force[i].y, -1.0, 1.0);
      pos[i].x += step * fx;
      pos[i].y += step * fy;
    }
  }
  return pos;
}

} // namespace graphsal
