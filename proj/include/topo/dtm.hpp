#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "topo/multigraph.hpp"
#include "topo/pathfinder.hpp"
#include "topo/symbolic.hpp"

namespace topo {

/// A parsed circuit: its R/L/C component branches plus one transfer couple.
/// The transmitter is an ideal voltage excitation, the receptor an open
/// voltage probe; both are oriented.
struct Circuit {
  std::vector<Branch> components;
  Branch transmitter;
  Branch receptor;
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

inline void validate_circuit(const Circuit& c) {
  if (c.transmitter.kind != BranchKind::Transmitter || !c.transmitter.oriented)
    throw std::invalid_argument("transmitter must be an oriented source branch");
  if (c.receptor.kind != BranchKind::Receptor || !c.receptor.oriented)
    throw std::invalid_argument("receptor must be an oriented probe branch");
  if (c.transmitter.is_loop() || c.receptor.is_loop())
    throw std::invalid_argument("transfer couple branches must join two distinct nodes");
  for (const Branch& b : c.components) {
    if (weight_class(b.kind) == WeightClass::None)
      throw std::invalid_argument("component list may not contain source branches");
    if (b.value <= 0)
      throw std::invalid_argument("component '" + b.nature_name + "' must have a positive value");
  }
}

/// Graph of the components alone, sources excluded.
inline Multigraph component_graph(const Circuit& c) { return Multigraph::build(c.components); }

/// Graph of the components plus the transfer couple.
inline Multigraph transfer_graph(const Circuit& c) {
  std::vector<Branch> branches = c.components;
  branches.push_back(c.transmitter);
  branches.push_back(c.receptor);
  return Multigraph::build(branches);
}

/// Graph of the non-excited circuit: the voltage transmitter is replaced by a
/// short circuit (deleted with its endpoints merged) and the open receptor is
/// simply deleted, keeping the vertex set. Loops created by the merge stay in
/// the looped list.
inline Multigraph non_excited_graph(const Circuit& c) {
  validate_circuit(c);
  return transfer_graph(c)
      .supplement({c.transmitter.nature_name})
      .without({c.receptor.nature_name});
}

/// A circuit graph is degenerate when it is not connected; its determinant is
/// null.
inline bool is_degenerate(const Multigraph& g) { return !g.is_connected(); }

namespace detail {
inline void collect_spanning_trees(const Multigraph& g, std::set<std::string>& taken,
                                   std::set<std::set<std::string>>& out) {
  if (!g.is_connected()) return;
  if (g.vertices().size() <= 1) {
    out.insert(taken);
    return;
  }
  // deletion-contraction on the first non-looped branch
  const std::string name = g.non_looped().front().nature_name;
  taken.insert(name);
  collect_spanning_trees(g.supplement({name}), taken, out);
  taken.erase(name);
  collect_spanning_trees(g.without({name}), taken, out);
}
}  // namespace detail

/// All spanning trees as sets of non-looped branch names; parallel branches
/// yield distinct trees, looped branches never appear. A disconnected graph
/// has none; a single vertex has exactly the empty tree.
inline std::set<std::set<std::string>> spanning_trees(const Multigraph& g) {
  if (g.vertices().empty())
    throw std::invalid_argument("spanning trees of an empty graph are undefined");
  std::set<std::set<std::string>> out;
  std::set<std::string> taken;
  detail::collect_spanning_trees(g, taken, out);
  return out;
}

/// Symbolic weight of a component branch: an inductance L is the impedance
/// L*s, a capacitance C the admittance C*s, a resistance the impedance R.
/// Source branches weigh 1.
inline TopoPolynomial branch_weight(const Branch& b) {
  switch (weight_class(b.kind)) {
    case WeightClass::Admittance:
      return TopoPolynomial::monomial(1, {{b.nature_name, 1}}, 1);
    case WeightClass::Impedance:
      return b.kind == BranchKind::Inductor
                 ? TopoPolynomial::monomial(1, {{b.nature_name, 1}}, 1)
                 : TopoPolynomial::symbol(b.nature_name);
    default:
      return TopoPolynomial::constant(1);
  }
}

/// The topological determinant: the sum over all spanning trees of the
/// admittance weights of the Y branches inside the tree times the impedance
/// weights of the Z branches outside it. Looped Z branches are outside every
/// tree and contribute their impedance factor throughout; looped Y branches
/// contribute 1. Null for a disconnected graph; 1 for a bare single vertex.
inline TopoPolynomial determinant(const Multigraph& g) {
  if (g.vertices().empty())
    throw std::invalid_argument("determinant of an empty graph is undefined");
  TopoPolynomial d;
  for (const std::set<std::string>& tree : spanning_trees(g)) {
    TopoPolynomial term = TopoPolynomial::constant(1);
    for (const Branch& b : g.non_looped()) {
      const bool in_tree = tree.count(b.nature_name) != 0;
      const WeightClass wc = weight_class(b.kind);
      if ((in_tree && wc == WeightClass::Admittance) ||
          (!in_tree && wc == WeightClass::Impedance))
        term *= branch_weight(b);
    }
    for (const Branch& b : g.looped())
      if (weight_class(b.kind) == WeightClass::Impedance) term *= branch_weight(b);
    d += term;
  }
  return d;
}

/// Value of one transfer cycle: its sign, times the admittance weights of the
/// Y branches lying on the cycle, times the determinant of the cycle's
/// supplement in the transfer graph. Z branches on the cycle and the transfer
/// couple itself contribute factor 1.
inline TopoPolynomial cycle_value(const TransferCycle& tc, const Multigraph& transfer) {
  TopoPolynomial v = TopoPolynomial::constant(tc.sign);
  for (const std::string& name : tc.cycle.branches) {
    const Branch* b = transfer.find_branch(name);
    if (b == nullptr) throw std::invalid_argument("cycle branch '" + name + "' not in graph");
    if (weight_class(b->kind) == WeightClass::Admittance) v *= branch_weight(*b);
  }
  const std::set<std::string> removed(tc.cycle.branches.begin(), tc.cycle.branches.end());
  return v * determinant(transfer.supplement(removed));
}

/// The transfer numerator: the algebraic sum of the values of all transfer
/// cycles joining the transmitter to the receptor. Null when no transfer
/// cycle exists.
inline TopoPolynomial numerator(const Circuit& c) {
  validate_circuit(c);
  const Multigraph tg = transfer_graph(c);
  TopoPolynomial n;
  for (const TransferCycle& tc :
       transfer_cycles(tg, c.transmitter.nature_name, c.receptor.nature_name))
    n += cycle_value(tc, tg);
  return n;
}

/// N(s) and D(s) of a circuit, reported unreduced. D is the zero polynomial
/// iff the non-excited graph is degenerate, in which case the result is
/// flagged instead of raising.
struct TransferFunction {
  TopoPolynomial numerator;
  TopoPolynomial denominator;
  bool degenerate = false;
  std::vector<TransferCycle> cycles;
};

inline TransferFunction transfer_function(const Circuit& c) {
  validate_circuit(c);
  TransferFunction tf;
  const Multigraph tg = transfer_graph(c);
  tf.cycles = transfer_cycles(tg, c.transmitter.nature_name, c.receptor.nature_name);
  for (const TransferCycle& tc : tf.cycles) tf.numerator += cycle_value(tc, tg);
  const Multigraph ne = non_excited_graph(c);
  tf.degenerate = is_degenerate(ne);
  tf.denominator = determinant(ne);
  return tf;
}

/// Component values keyed by nature name, for numeric evaluation.
inline SymbolAssignment symbol_values(const Circuit& c) {
  SymbolAssignment a;
  for (const Branch& b : c.components) a.emplace(b.nature_name, b.value);
  return a;
}

inline nlohmann::ordered_json to_json(const TransferFunction& tf) {
  nlohmann::ordered_json j;
  j["numerator"] = tf.numerator.to_json();
  j["denominator"] = tf.denominator.to_json();
  j["degenerate"] = tf.degenerate;
  auto cycles = nlohmann::ordered_json::array();
  for (const TransferCycle& tc : tf.cycles) {
    nlohmann::ordered_json entry;
    entry["branches"] = tc.cycle.branches;
    entry["sign"] = tc.sign;
    cycles.push_back(std::move(entry));
  }
  j["transfer_cycles"] = std::move(cycles);
  return j;
}

}  // namespace topo
