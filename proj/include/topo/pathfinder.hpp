#pragma once

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "topo/multigraph.hpp"

namespace topo {

/// Raised when a path query names the same vertex as both endpoints.
struct SameEndpointsError : std::invalid_argument {
  SameEndpointsError()
      : std::invalid_argument("Beginning node shall be different than the ending node") {}
};

/// An alternating vertex/branch chain: vertices v0..vk and the k branches
/// joining consecutive vertices (by nature name). Paths are vertex-simple, so
/// parallel branches between the same vertex pair give distinct paths.
struct Path {
  std::vector<int> vertices;
  std::vector<std::string> branches;

  bool closed() const { return vertices.size() > 1 && vertices.front() == vertices.back(); }

  Path reversed() const {
    Path r = *this;
    std::reverse(r.vertices.begin(), r.vertices.end());
    std::reverse(r.branches.begin(), r.branches.end());
    return r;
  }

  friend auto operator<=>(const Path&, const Path&) = default;
};

inline std::string render_path(const Path& p) {
  std::string out = std::to_string(p.vertices.front());
  for (std::size_t i = 0; i < p.branches.size(); ++i)
    out += " -(" + p.branches[i] + ")- " + std::to_string(p.vertices[i + 1]);
  return out;
}

/// All vertex-simple paths from `bgn` to `end`, distinguishing parallel
/// branches. Works as a frontier of partial paths seeded with one entry per
/// branch incident to `bgn`; each partial path is extended through the
/// adjacency-incidence list of its last vertex and is accepted when that
/// vertex is `end`, rejected when the vertex already occurs in the chain or is
/// a dead end of degree one, and kept on the frontier otherwise. Runs until
/// the frontier is empty. Looped branches never participate.
inline std::vector<Path> enumerate_paths(const Multigraph& g, int bgn, int end) {
  if (bgn == end) throw SameEndpointsError();
  g.incidences(bgn);
  g.incidences(end);

  std::vector<Path> found;
  std::deque<Path> frontier;
  const auto classify = [&](Path&& p) {
    const int last = p.vertices.back();
    if (last == end) {
      found.push_back(std::move(p));
      return;
    }
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
      if (p.vertices[i] == last) return;  // vertex already crossed
    if (g.degree(last) == 1) return;      // dead end, cannot reach the ending node
    frontier.push_back(std::move(p));
  };

  for (const IncidenceEntry& e : g.incidences(bgn))
    classify(Path{{bgn, e.neighbor}, {g.non_looped()[e.branch].nature_name}});

  while (!frontier.empty()) {
    const Path p = std::move(frontier.front());
    frontier.pop_front();
    for (const IncidenceEntry& e : g.incidences(p.vertices.back())) {
      Path q = p;
      q.vertices.push_back(e.neighbor);
      q.branches.push_back(g.non_looped()[e.branch].nature_name);
      classify(std::move(q));
    }
  }
  return found;
}

/// All simple cycles that pass through the given non-looped branch, each
/// reported once. A cycle is built by closing a path between the branch's
/// endpoints found in the graph with that branch deleted; the returned chain
/// starts at the branch's first node and crosses it in its stored direction.
inline std::vector<Path> cycles_through(const Multigraph& g, const std::string& branch_name) {
  const Branch* b = g.find_branch(branch_name);
  if (b == nullptr) throw std::invalid_argument("unknown branch '" + branch_name + "'");
  if (b->is_loop())
    throw std::invalid_argument("branch '" + branch_name + "' is a loop; loop cycles are excluded");

  const Multigraph rest = g.without({branch_name});
  std::vector<Path> cycles;
  for (const Path& p : enumerate_paths(rest, b->second_node, b->first_node)) {
    Path c;
    c.vertices.push_back(b->first_node);
    c.vertices.insert(c.vertices.end(), p.vertices.begin(), p.vertices.end());
    c.branches.push_back(b->nature_name);
    c.branches.insert(c.branches.end(), p.branches.begin(), p.branches.end());
    cycles.push_back(std::move(c));
  }
  return cycles;
}

/// Sign of a transfer cycle: traverse the cycle in the direction that crosses
/// the transmitter from its first to its second node; the sign is +1 when the
/// receptor is crossed from its first to its second node too, -1 otherwise.
inline int cycle_sign(const Multigraph& g, const Path& cycle, const std::string& transmitter,
                      const std::string& receptor) {
  const Branch* gb = g.find_branch(transmitter);
  const Branch* hb = g.find_branch(receptor);
  if (gb == nullptr || hb == nullptr)
    throw std::invalid_argument("unknown branch '" + (gb ? receptor : transmitter) + "'");

  const auto step_of = [&cycle](const std::string& name) {
    std::size_t at = cycle.branches.size();
    for (std::size_t i = 0; i < cycle.branches.size(); ++i) {
      if (cycle.branches[i] != name) continue;
      if (at != cycle.branches.size())
        throw std::invalid_argument("cycle crosses branch '" + name + "' more than once");
      at = i;
    }
    if (at == cycle.branches.size())
      throw std::invalid_argument("cycle does not contain branch '" + name + "'");
    return at;
  };
  const std::size_t gi = step_of(transmitter);
  const std::size_t hi = step_of(receptor);
  if (!gb->joins(cycle.vertices[gi], cycle.vertices[gi + 1]) ||
      !hb->joins(cycle.vertices[hi], cycle.vertices[hi + 1]))
    throw std::invalid_argument("cycle steps do not match branch endpoints");

  const bool listed_crosses_g_forward =
      cycle.vertices[gi] == gb->first_node && cycle.vertices[gi + 1] == gb->second_node;
  int from = cycle.vertices[hi], to = cycle.vertices[hi + 1];
  if (!listed_crosses_g_forward) std::swap(from, to);
  return (from == hb->first_node && to == hb->second_node) ? 1 : -1;
}

/// A simple cycle containing both branches of a transfer couple, with its sign.
struct TransferCycle {
  Path cycle;
  int sign = 0;
  friend bool operator==(const TransferCycle&, const TransferCycle&) = default;
};

/// The transfer cycles joining transmitter `g_name` to receptor `h_name`:
/// every simple cycle through the transmitter that also crosses the receptor,
/// annotated with its sign.
inline std::vector<TransferCycle> transfer_cycles(const Multigraph& g, const std::string& g_name,
                                                  const std::string& h_name) {
  if (g_name == h_name)
    throw std::invalid_argument("transmitter and receptor must be distinct branches");
  const Branch* gb = g.find_branch(g_name);
  const Branch* hb = g.find_branch(h_name);
  if (gb == nullptr || hb == nullptr)
    throw std::invalid_argument("unknown branch '" + (gb ? h_name : g_name) + "'");
  if (gb->is_loop() || hb->is_loop())
    throw std::invalid_argument("transfer couple branches must be non-looped");
  if (!gb->oriented || !hb->oriented)
    throw std::invalid_argument("transfer couple branches must be oriented");

  std::vector<TransferCycle> out;
  for (Path& c : cycles_through(g, g_name)) {
    if (std::find(c.branches.begin(), c.branches.end(), h_name) == c.branches.end()) continue;
    const int sign = cycle_sign(g, c, g_name, h_name);
    out.push_back({std::move(c), sign});
  }
  return out;
}

}  // namespace topo
