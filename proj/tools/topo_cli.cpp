// Command-line front end: path and cycle enumeration, symbolic transfer
// functions, degeneracy checks, and numeric cross-verification of netlists.
//
// Exit codes: 0 success; 1 usage or parse error; 2 degenerate circuit
// (`check`); 3 verification mismatch (`verify`).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topo/dtm.hpp"
#include "topo/multigraph.hpp"
#include "topo/netlist.hpp"
#include "topo/oracle.hpp"
#include "topo/pathfinder.hpp"
#include "topo/symbolic.hpp"

namespace {

constexpr double kVerifyTolerance = 1e-9;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

topo::Circuit load_circuit(const std::string& path) {
  return topo::parse_netlist(read_file(path));
}

std::vector<double> parse_frequency_list(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::runtime_error("invalid frequency '" + item + "'");
    }
    if (used != item.size() || !(value > 0.0))
      throw std::runtime_error("invalid frequency '" + item + "'");
    out.push_back(value);
  }
  if (out.empty()) throw std::runtime_error("empty frequency list");
  return out;
}

int run_paths(const std::string& file, int from, int to, bool with_sources) {
  const topo::Circuit circuit = load_circuit(file);
  const topo::Multigraph graph =
      with_sources ? topo::transfer_graph(circuit) : topo::component_graph(circuit);
  const std::vector<topo::Path> paths = topo::enumerate_paths(graph, from, to);
  for (const topo::Path& p : paths) std::cout << topo::render_path(p) << "\n";
  std::cout << "total: " << paths.size() << "\n";
  return 0;
}

int run_cycles(const std::string& file) {
  const topo::Circuit circuit = load_circuit(file);
  const topo::Multigraph graph = topo::transfer_graph(circuit);
  for (const topo::TransferCycle& tc :
       topo::transfer_cycles(graph, circuit.transmitter.nature_name,
                             circuit.receptor.nature_name))
    std::cout << (tc.sign > 0 ? "[+] " : "[-] ") << topo::render_path(tc.cycle) << "\n";
  return 0;
}

int run_det(const std::string& file) {
  const topo::Circuit circuit = load_circuit(file);
  std::cout << topo::determinant(topo::non_excited_graph(circuit)).render() << "\n";
  return 0;
}

int run_num(const std::string& file) {
  const topo::Circuit circuit = load_circuit(file);
  std::cout << topo::numerator(circuit).render() << "\n";
  return 0;
}

int run_tf(const std::string& file, bool json, bool numeric) {
  const topo::Circuit circuit = load_circuit(file);
  topo::TransferFunction tf = topo::transfer_function(circuit);
  if (numeric) {
    const topo::SymbolAssignment values = topo::symbol_values(circuit);
    tf.numerator = tf.numerator.substitute(values);
    tf.denominator = tf.denominator.substitute(values);
  }
  if (json) {
    std::cout << topo::to_json(tf).dump(2) << "\n";
  } else {
    std::cout << "N(s) = " << tf.numerator.render() << "\n";
    std::cout << "D(s) = " << tf.denominator.render() << "\n";
  }
  return 0;
}

int run_check(const std::string& file) {
  const topo::Circuit circuit = load_circuit(file);
  if (topo::is_degenerate(topo::non_excited_graph(circuit))) {
    std::cout << "degenerate\n";
    return 2;
  }
  std::cout << "connected\n";
  return 0;
}

int run_verify(const std::string& file, const std::string& freqs) {
  const topo::Circuit circuit = load_circuit(file);
  const std::vector<double> omegas =
      freqs.empty() ? topo::default_frequencies() : parse_frequency_list(freqs);
  const topo::VerifyReport report = topo::verify_transfer(circuit, omegas);
  if (report.compared == 0) {
    std::cerr << "error: no comparable frequencies\n";
    return 3;
  }
  std::cout << "max relative error: " << std::scientific << std::setprecision(3)
            << report.max_rel_error << " (compared " << report.compared << ", skipped "
            << report.skipped << ")\n";
  return report.max_rel_error <= kVerifyTolerance ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological analysis of RLC netlists: symbolic transfer functions,\n"
               "path and cycle enumeration, and numeric cross-verification."};
  app.require_subcommand(1);

  std::string file;
  int from = 0;
  int to = 0;
  bool with_sources = false;
  bool json = false;
  bool numeric = false;
  std::string freqs;

  CLI::App* paths = app.add_subcommand("paths", "List all simple paths between two vertices");
  paths->add_option("file", file, "netlist file")->required();
  paths->add_option("--from", from, "start vertex")->required();
  paths->add_option("--to", to, "end vertex")->required();
  paths->add_flag("--with-sources", with_sources, "include source branches in the graph");

  CLI::App* cycles = app.add_subcommand("cycles", "List transfer cycles with signs");
  cycles->add_option("file", file, "netlist file")->required();

  CLI::App* det = app.add_subcommand("det", "Print the topological determinant D(s)");
  det->add_option("file", file, "netlist file")->required();

  CLI::App* num = app.add_subcommand("num", "Print the transfer numerator N(s)");
  num->add_option("file", file, "netlist file")->required();

  CLI::App* tf = app.add_subcommand("tf", "Print the transfer function N(s) and D(s)");
  tf->add_option("file", file, "netlist file")->required();
  tf->add_flag("--json", json, "emit the JSON document");
  tf->add_flag("--numeric", numeric, "substitute component values");

  CLI::App* check = app.add_subcommand("check", "Report connectivity of the non-excited graph");
  check->add_option("file", file, "netlist file")->required();

  CLI::App* verify = app.add_subcommand("verify", "Compare N/D against the numeric oracle");
  verify->add_option("file", file, "netlist file")->required();
  verify->add_option("--freqs", freqs, "comma-separated angular frequencies (rad/s)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (paths->parsed()) return run_paths(file, from, to, with_sources);
    if (cycles->parsed()) return run_cycles(file);
    if (det->parsed()) return run_det(file);
    if (num->parsed()) return run_num(file);
    if (tf->parsed()) return run_tf(file, json, numeric);
    if (check->parsed()) return run_check(file);
    if (verify->parsed()) return run_verify(file, freqs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
