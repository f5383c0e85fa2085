#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "topo/rational.hpp"

namespace topo {

enum class BranchKind { Resistor, Inductor, Capacitor, Transmitter, Receptor };

/// Weight affinity of a branch: resistors and inductors act as impedances (Z),
/// capacitors as admittances (Y). Source branches carry no weight.
enum class WeightClass { Impedance, Admittance, None };

inline WeightClass weight_class(BranchKind k) {
  switch (k) {
    case BranchKind::Resistor:
    case BranchKind::Inductor:
      return WeightClass::Impedance;
    case BranchKind::Capacitor:
      return WeightClass::Admittance;
    default:
      return WeightClass::None;
  }
}

struct Branch {
  int first_node = 0;
  int second_node = 0;
  bool oriented = false;      // for oriented branches the stored node order is the positive direction
  std::string nature_name;    // component letter + index, e.g. "R1"; unique within a graph
  std::string category_name;  // "Z<i>" or "Y<i>"; empty for source branches
  BranchKind kind = BranchKind::Resistor;
  Rational value = 0;         // ohm / henry / farad; unused for source branches

  bool is_loop() const { return first_node == second_node; }
  bool joins(int a, int b) const {
    return (first_node == a && second_node == b) || (first_node == b && second_node == a);
  }
  friend bool operator==(const Branch&, const Branch&) = default;
};

struct VertexRecord {
  int label = 0;
  int degree = 0;  // number of incident non-looped branches
  friend bool operator==(const VertexRecord&, const VertexRecord&) = default;
};

/// One entry of a vertex's adjacency-incidence row: the opposite endpoint of an
/// incident non-looped branch, plus the branch itself (as an index into
/// Multigraph::non_looped()).
struct IncidenceEntry {
  int neighbor = 0;
  std::size_t branch = 0;
  friend bool operator==(const IncidenceEntry&, const IncidenceEntry&) = default;
};

/// A labeled weighted multigraph held as four views of the same branch set:
/// vertex list, non-looped branch list, looped branch list, and the per-vertex
/// adjacency-incidence list. Looped branches are excluded from degrees and
/// from adjacency-incidence rows. Instances are immutable after construction;
/// the structural operations return new graphs.
class Multigraph {
 public:
  Multigraph() = default;

  /// Builds the graph from a branch list. The vertex set is the union of all
  /// branch endpoints and `extra_vertices` (which may add isolated vertices).
  /// Branch order is preserved within each of the two branch lists, and
  /// adjacency-incidence rows follow non-looped list order.
  static Multigraph build(const std::vector<Branch>& branches,
                          const std::vector<int>& extra_vertices = {}) {
    Multigraph g;
    std::set<std::string> seen;
    for (const Branch& b : branches) {
      if (!seen.insert(b.nature_name).second)
        throw std::invalid_argument("duplicate branch name '" + b.nature_name + "'");
      if (!b.category_name.empty()) {
        const WeightClass wc = weight_class(b.kind);
        const char want = wc == WeightClass::Admittance ? 'Y' : 'Z';
        if (wc != WeightClass::None && b.category_name.front() != want)
          throw std::invalid_argument("branch '" + b.nature_name + "' has category '" +
                                      b.category_name + "' inconsistent with its kind");
      }
      g.adjacency_[b.first_node];
      g.adjacency_[b.second_node];
      (b.is_loop() ? g.looped_ : g.non_looped_).push_back(b);
    }
    for (int v : extra_vertices) g.adjacency_[v];
    for (std::size_t i = 0; i < g.non_looped_.size(); ++i) {
      const Branch& b = g.non_looped_[i];
      g.adjacency_[b.first_node].push_back({b.second_node, i});
      g.adjacency_[b.second_node].push_back({b.first_node, i});
    }
    // each row ordered by neighbor label, parallel branches by list position
    for (auto& [label, row] : g.adjacency_)
      std::stable_sort(row.begin(), row.end(),
                       [](const IncidenceEntry& a, const IncidenceEntry& b) {
                         return a.neighbor < b.neighbor;
                       });
    for (const auto& [label, row] : g.adjacency_)
      g.vertices_.push_back({label, static_cast<int>(row.size())});
    return g;
  }

  const std::vector<VertexRecord>& vertices() const { return vertices_; }
  const std::vector<Branch>& non_looped() const { return non_looped_; }
  const std::vector<Branch>& looped() const { return looped_; }
  const std::map<int, std::vector<IncidenceEntry>>& adjacency_incidence() const {
    return adjacency_;
  }

  bool has_vertex(int v) const { return adjacency_.count(v) != 0; }

  const std::vector<IncidenceEntry>& incidences(int v) const {
    const auto it = adjacency_.find(v);
    if (it == adjacency_.end())
      throw std::invalid_argument("unknown vertex " + std::to_string(v));
    return it->second;
  }

  int degree(int v) const { return static_cast<int>(incidences(v).size()); }

  const Branch* find_branch(const std::string& nature_name) const {
    for (const Branch& b : non_looped_)
      if (b.nature_name == nature_name) return &b;
    for (const Branch& b : looped_)
      if (b.nature_name == nature_name) return &b;
    return nullptr;
  }

  /// Non-looped branches followed by looped ones, in list order.
  std::vector<Branch> all_branches() const {
    std::vector<Branch> out = non_looped_;
    out.insert(out.end(), looped_.begin(), looped_.end());
    return out;
  }

  /// Deletes each named branch and merges its two endpoints into one vertex
  /// (transitively, so removing a path collapses its vertices to a single
  /// one). A merged vertex keeps the smallest constituent label. Surviving
  /// branches are re-attached; those whose endpoints became equal move to the
  /// looped list.
  Multigraph supplement(const std::set<std::string>& removed) const {
    std::map<int, int> parent;
    for (const auto& vr : vertices_) parent[vr.label] = vr.label;
    const auto find = [&parent](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    std::set<std::string> pending = removed;
    std::vector<Branch> rest;
    for (const Branch& b : all_branches()) {
      if (pending.erase(b.nature_name)) {
        int a = find(b.first_node), c = find(b.second_node);
        if (a != c) parent[std::max(a, c)] = std::min(a, c);
        continue;
      }
      rest.push_back(b);
    }
    if (!pending.empty())
      throw std::invalid_argument("unknown branch '" + *pending.begin() + "'");
    for (Branch& b : rest) {
      b.first_node = find(b.first_node);
      b.second_node = find(b.second_node);
    }
    std::vector<int> keep;
    for (const auto& vr : vertices_) keep.push_back(find(vr.label));
    return build(rest, keep);
  }

  /// Deletes the named branches without merging endpoints. The vertex set is
  /// preserved, so vertices may become isolated.
  Multigraph without(const std::set<std::string>& removed) const {
    std::set<std::string> pending = removed;
    std::vector<Branch> rest;
    for (const Branch& b : all_branches())
      if (!pending.erase(b.nature_name)) rest.push_back(b);
    if (!pending.empty())
      throw std::invalid_argument("unknown branch '" + *pending.begin() + "'");
    std::vector<int> keep;
    for (const auto& vr : vertices_) keep.push_back(vr.label);
    return build(rest, keep);
  }

  /// True iff every vertex pair is joined by some path. Undefined (throws) for
  /// the empty graph.
  bool is_connected() const {
    if (vertices_.empty())
      throw std::logic_error("connectivity of an empty graph is undefined");
    std::map<int, int> parent;
    for (const auto& vr : vertices_) parent[vr.label] = vr.label;
    const auto find = [&parent](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const Branch& b : non_looped_) {
      int a = find(b.first_node), c = find(b.second_node);
      if (a != c) parent[std::max(a, c)] = std::min(a, c);
    }
    const int root = find(vertices_.front().label);
    return std::all_of(vertices_.begin(), vertices_.end(),
                       [&](const VertexRecord& vr) { return find(vr.label) == root; });
  }

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.vertices_ == b.vertices_ && a.non_looped_ == b.non_looped_ &&
           a.looped_ == b.looped_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<VertexRecord> vertices_;  // ascending label order
  std::vector<Branch> non_looped_;
  std::vector<Branch> looped_;
  std::map<int, std::vector<IncidenceEntry>> adjacency_;
};

}  // namespace topo
