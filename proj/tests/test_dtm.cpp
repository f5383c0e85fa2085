#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "test_helpers.hpp"
#include "topo/dtm.hpp"
#include "topo/netlist.hpp"
#include "topo/oracle.hpp"

using namespace topo;
using Catch::Matchers::ContainsSubstring;
using test::demo_graph;
using test::load_fixture;
using test::random_multigraph;

namespace {

const char* kDemoDeterminant = "C1*L1*R1*s^2 + C1*L1*R2*s^2 + C1*R1*R2*s + L1*s + R2";

Circuit divider() { return parse_netlist(test::read_fixture("divider.net")); }

}  // namespace

TEST_CASE("circuit validation") {
  Circuit c = divider();
  CHECK_NOTHROW(validate_circuit(c));

  Circuit bad = c;
  bad.transmitter.kind = BranchKind::Resistor;
  CHECK_THROWS_WITH(validate_circuit(bad), ContainsSubstring("transmitter"));

  bad = c;
  bad.receptor.oriented = false;
  CHECK_THROWS_WITH(validate_circuit(bad), ContainsSubstring("receptor"));

  bad = c;
  bad.transmitter.second_node = bad.transmitter.first_node;
  CHECK_THROWS_WITH(validate_circuit(bad), ContainsSubstring("distinct nodes"));

  bad = c;
  bad.components.push_back(bad.receptor);
  CHECK_THROWS_WITH(validate_circuit(bad), ContainsSubstring("source branches"));

  bad = c;
  bad.components[0].value = 0;
  CHECK_THROWS_WITH(validate_circuit(bad), ContainsSubstring("positive value"));
}

TEST_CASE("component and transfer graphs") {
  const Circuit c = divider();
  const Multigraph cg = component_graph(c);
  CHECK(cg.non_looped().size() == 2);
  CHECK(cg.find_branch("g") == nullptr);

  const Multigraph tg = transfer_graph(c);
  CHECK(tg.non_looped().size() == 4);
  REQUIRE(tg.find_branch("g") != nullptr);
  REQUIRE(tg.find_branch("h") != nullptr);
  CHECK(tg.find_branch("g")->kind == BranchKind::Transmitter);
}

TEST_CASE("non-excited graph shorts the transmitter and removes the receptor") {
  const Multigraph ne = non_excited_graph(divider());
  // shorting VIN merges 1 into 0; R1 and R2 end up in parallel on {0, 2}
  REQUIRE(ne.vertices().size() == 2);
  CHECK(ne.vertices()[0].label == 0);
  CHECK(ne.vertices()[1].label == 2);
  CHECK(ne.non_looped().size() == 2);
  CHECK(ne.find_branch("h") == nullptr);
  CHECK(ne.find_branch("R1")->joins(0, 2));
  CHECK(ne.find_branch("R2")->joins(0, 2));
}

TEST_CASE("receptor removal keeps the vertex count") {
  const Circuit c = load_fixture("dangling_out.net");
  const Multigraph tg = transfer_graph(c);
  const Multigraph ne = non_excited_graph(c);
  // shorting merges two vertices; removing the probe must not merge any
  CHECK(ne.vertices().size() == tg.vertices().size() - 1);
  CHECK(ne.has_vertex(3));
  CHECK(ne.degree(3) == 0);
  CHECK(is_degenerate(ne));
}

TEST_CASE("probe across the source leaves a single shorted vertex") {
  const Circuit c = parse_netlist("R1 1 0 1k\nVIN 1 0\nOUT 1 0");
  const Multigraph ne = non_excited_graph(c);
  REQUIRE(ne.vertices().size() == 1);
  CHECK(ne.non_looped().empty());
  REQUIRE(ne.looped().size() == 1);
  CHECK(ne.looped()[0].nature_name == "R1");
  CHECK_FALSE(is_degenerate(ne));
  CHECK(determinant(ne).render() == "R1");

  const TransferFunction tf = transfer_function(c);
  CHECK(tf.numerator.render() == "R1");  // H = 1: the probe sees the source
}

TEST_CASE("worked example: spanning trees") {
  const std::set<std::set<std::string>> trees = spanning_trees(demo_graph());
  const std::set<std::set<std::string>> expected = {
      {"C1", "L1"}, {"C1", "R1"}, {"C1", "R2"}, {"L1", "R1"}, {"R1", "R2"}};
  CHECK(trees == expected);
}

TEST_CASE("spanning trees of simple shapes") {
  const Multigraph triangle = Multigraph::build({
      {0, 1, false, "R1", "Z1", BranchKind::Resistor, Rational(1)},
      {1, 2, false, "R2", "Z2", BranchKind::Resistor, Rational(1)},
      {2, 0, false, "R3", "Z3", BranchKind::Resistor, Rational(1)},
  });
  CHECK(spanning_trees(triangle) ==
        std::set<std::set<std::string>>{{"R1", "R2"}, {"R1", "R3"}, {"R2", "R3"}});

  const Multigraph pair = Multigraph::build({
      {0, 1, false, "R1", "Z1", BranchKind::Resistor, Rational(1)},
      {0, 1, false, "R2", "Z2", BranchKind::Resistor, Rational(1)},
  });
  CHECK(spanning_trees(pair) == std::set<std::set<std::string>>{{"R1"}, {"R2"}});

  const Multigraph single = Multigraph::build(
      {{4, 4, false, "C1", "Y1", BranchKind::Capacitor, Rational(1)}});
  CHECK(spanning_trees(single) == std::set<std::set<std::string>>{{}});

  const Multigraph split = Multigraph::build({
      {0, 1, false, "R1", "Z1", BranchKind::Resistor, Rational(1)},
      {2, 3, false, "R2", "Z2", BranchKind::Resistor, Rational(1)},
  });
  CHECK(spanning_trees(split).empty());

  CHECK_THROWS_AS(spanning_trees(Multigraph::build({})), std::invalid_argument);
}

TEST_CASE("every enumerated tree is spanning and acyclic") {
  std::mt19937 rng(5501);
  for (int round = 0; round < 40; ++round) {
    const Multigraph g = random_multigraph(rng, 6, 9);
    const std::size_t n = g.vertices().size();
    std::vector<int> labels;
    for (const VertexRecord& v : g.vertices()) labels.push_back(v.label);
    for (const std::set<std::string>& tree : spanning_trees(g)) {
      REQUIRE(tree.size() == n - 1);
      std::vector<Branch> picked;
      for (const std::string& name : tree) {
        const Branch* b = g.find_branch(name);
        REQUIRE(b != nullptr);
        CHECK_FALSE(b->is_loop());
        picked.push_back(*b);
      }
      CHECK(Multigraph::build(picked, labels).is_connected());
    }
  }
}

TEST_CASE("branch weights by kind") {
  CHECK(branch_weight({0, 1, false, "R1", "Z1", BranchKind::Resistor, Rational(5)}).render() ==
        "R1");
  CHECK(branch_weight({0, 1, false, "L1", "Z2", BranchKind::Inductor, Rational(5)}).render() ==
        "L1*s");
  CHECK(branch_weight({0, 1, false, "C1", "Y1", BranchKind::Capacitor, Rational(5)}).render() ==
        "C1*s");
  CHECK(branch_weight({0, 1, true, "g", "", BranchKind::Transmitter, Rational(0)}).render() ==
        "1");
}

TEST_CASE("worked example: the determinant in canonical form") {
  CHECK(determinant(demo_graph()).render() == kDemoDeterminant);
}

TEST_CASE("determinants of reference circuits") {
  CHECK(determinant(non_excited_graph(divider())).render() == "R1 + R2");
  CHECK(determinant(non_excited_graph(load_fixture("divider_r3.net"))).render() ==
        "R1*R2 + R1*R3 + R2*R3");
  CHECK(determinant(non_excited_graph(load_fixture("rc_lowpass.net"))).render() ==
        "C1*R1*s + 1");
  CHECK_THROWS_AS(determinant(Multigraph::build({})), std::invalid_argument);
}

TEST_CASE("degenerate graphs have a null determinant") {
  for (const char* name : {"disconnected.net", "disconnected_lc.net", "dangling_out.net"}) {
    INFO(name);
    const Multigraph ne = non_excited_graph(load_fixture(name));
    CHECK(is_degenerate(ne));
    CHECK(determinant(ne).is_zero());
  }
}

TEST_CASE("determinant term count equals the spanning tree count") {
  std::mt19937 rng(5502);
  for (int round = 0; round < 60; ++round) {
    const Multigraph g = random_multigraph(rng, 6, 9);
    const auto trees = spanning_trees(g);
    CHECK(determinant(g).term_count() == trees.size());
    CHECK(determinant(g).is_zero() == !g.is_connected());
  }
}

TEST_CASE("looped impedances multiply the determinant") {
  // a loop resistor at a vertex scales D; a loop capacitor leaves it alone
  const Multigraph base = Multigraph::build({
      {0, 1, false, "R1", "Z1", BranchKind::Resistor, Rational(1)},
      {0, 1, false, "C1", "Y1", BranchKind::Capacitor, Rational(1)},
  });
  CHECK(determinant(base).render() == "C1*R1*s + 1");

  const Multigraph with_loops = Multigraph::build({
      {0, 1, false, "R1", "Z1", BranchKind::Resistor, Rational(1)},
      {0, 1, false, "C1", "Y1", BranchKind::Capacitor, Rational(1)},
      {0, 0, false, "L1", "Z2", BranchKind::Inductor, Rational(1)},
      {1, 1, false, "C2", "Y2", BranchKind::Capacitor, Rational(1)},
  });
  CHECK(determinant(with_loops).render() == "C1*L1*R1*s^2 + L1*s");
}

TEST_CASE("cycle values of the divider family") {
  const Circuit plain = divider();
  const Multigraph tg = transfer_graph(plain);
  const std::vector<TransferCycle> cycles = transfer_cycles(tg, "g", "h");
  REQUIRE(cycles.size() == 1);
  CHECK(cycle_value(cycles[0], tg).render() == "R2");

  const Circuit variant = load_fixture("divider_r3.net");
  const Multigraph vtg = transfer_graph(variant);
  for (const TransferCycle& tc : transfer_cycles(vtg, "g", "h")) {
    const bool via_r3 =
        std::find(tc.cycle.branches.begin(), tc.cycle.branches.end(), "R3") !=
        tc.cycle.branches.end();
    CHECK(cycle_value(tc, vtg).render() == (via_r3 ? "R1*R2" : "R2*R3"));
  }
}

TEST_CASE("numerators of reference circuits") {
  CHECK(numerator(divider()).render() == "R2");
  CHECK(numerator(load_fixture("divider_r3.net")).render() == "R1*R2 + R2*R3");
  CHECK(numerator(load_fixture("rc_lowpass.net")).render() == "1");
  CHECK(numerator(load_fixture("demo.net")).render() == "C1*L1*R1*R2*s^2");
  // unreachable receptor: no transfer cycles at all
  CHECK(numerator(load_fixture("disconnected.net")).is_zero());
}

TEST_CASE("transfer function bundles all the pieces consistently") {
  for (const std::string& name : test::fixture_names()) {
    INFO(name);
    const Circuit c = load_fixture(name);
    const TransferFunction tf = transfer_function(c);
    CHECK(tf.numerator == numerator(c));
    CHECK(tf.denominator == determinant(non_excited_graph(c)));
    CHECK(tf.degenerate == is_degenerate(non_excited_graph(c)));
    CHECK(tf.degenerate == tf.denominator.is_zero());
    for (const TransferCycle& tc : tf.cycles) CHECK((tc.sign == 1 || tc.sign == -1));
  }
}

TEST_CASE("reversing the receptor negates N and leaves D unchanged") {
  for (const std::string& name : test::fixture_names()) {
    INFO(name);
    const Circuit c = load_fixture(name);
    Circuit flipped = c;
    std::swap(flipped.receptor.first_node, flipped.receptor.second_node);
    const TransferFunction a = transfer_function(c);
    const TransferFunction b = transfer_function(flipped);
    CHECK(b.numerator == -a.numerator);
    CHECK(b.denominator == a.denominator);
  }
}

TEST_CASE("the denominator ignores receptor placement") {
  const TopoPolynomial d1 =
      transfer_function(parse_netlist("R1 1 2 1k\nR2 2 0 1k\nVIN 1 0\nOUT 2 0")).denominator;
  const TopoPolynomial d2 =
      transfer_function(parse_netlist("R1 1 2 1k\nR2 2 0 1k\nVIN 1 0\nOUT 1 2")).denominator;
  CHECK(d1 == d2);
  CHECK(transfer_function(parse_netlist("R1 1 2 1k\nR2 2 0 1k\nVIN 1 0\nOUT 1 2"))
            .numerator.render() == "R1");
}

TEST_CASE("symbol values collect component values by name") {
  const SymbolAssignment values = symbol_values(load_fixture("rc_lowpass.net"));
  REQUIRE(values.size() == 2);
  CHECK(values.at("R1") == Rational(1000));
  CHECK(values.at("C1") == Rational(1, 1000000));
}

TEST_CASE("json document shape") {
  const nlohmann::ordered_json j = to_json(transfer_function(divider()));
  const std::vector<std::string> keys = {"numerator", "denominator", "degenerate",
                                         "transfer_cycles"};
  std::size_t i = 0;
  for (const auto& [key, unused] : j.items()) CHECK(key == keys[i++]);
  CHECK(j["degenerate"] == false);
  REQUIRE(j["transfer_cycles"].size() == 1);
  CHECK(j["transfer_cycles"][0]["branches"] ==
        nlohmann::ordered_json::array({"g", "R1", "h"}));
  CHECK(j["transfer_cycles"][0]["sign"] == 1);
  CHECK(j["numerator"][0]["symbols"] == nlohmann::ordered_json({{"R2", 1}}));

  const nlohmann::ordered_json degen =
      to_json(transfer_function(load_fixture("disconnected.net")));
  CHECK(degen["degenerate"] == true);
  CHECK(degen["denominator"] == nlohmann::ordered_json::array());
}
