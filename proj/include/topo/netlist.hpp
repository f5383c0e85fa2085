#pragma once

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "topo/dtm.hpp"
#include "topo/multigraph.hpp"
#include "topo/rational.hpp"

namespace topo {

/// Positional diagnostic for malformed netlist text. Lines and columns are
/// 1-based; what() carries the full rendered form.
struct ParseError : std::runtime_error {
  int line;
  int column;
  std::string message;
  ParseError(int l, int c, std::string msg)
      : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " +
                           msg),
        line(l),
        column(c),
        message(std::move(msg)) {}
};

namespace detail {

struct Token {
  std::string text;
  int column;  // 1-based
};

inline std::vector<Token> tokenize_line(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

inline int parse_node(const Token& t, int line) {
  if (t.text.empty()) throw ParseError(line, t.column, "malformed node label");
  if (t.text.size() > 9) throw ParseError(line, t.column, "node label too long");
  int value = 0;
  for (char ch : t.text) {
    if (ch < '0' || ch > '9')
      throw ParseError(line, t.column, "malformed node label '" + t.text + "'");
    value = value * 10 + (ch - '0');
  }
  return value;
}

/// Positive decimal with optional sign, fraction, and either an exponent
/// (e.g. 1e-6, magnitude capped) or a case-sensitive SI suffix.
inline Rational parse_value(const Token& t, int line) {
  const std::string& s = t.text;
  if (s.size() > 256) throw ParseError(line, t.column, "value too long");
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  long long frac_digits = 0;
  bool any_digit = false;
  bool seen_dot = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch >= '0' && ch <= '9') {
      digits = digits * 10 + (ch - '0');
      if (seen_dot) ++frac_digits;
      any_digit = true;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError(line, t.column, "malformed value '" + s + "'");
  long long exp10 = -frac_digits;
  if (i < s.size()) {
    const char ch = s[i];
    if (ch == 'e' || ch == 'E') {
      ++i;
      bool exp_negative = false;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        exp_negative = s[i] == '-';
        ++i;
      }
      long long e = 0;
      bool any_exp_digit = false;
      for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') break;
        e = e * 10 + (s[i] - '0');
        any_exp_digit = true;
        if (e > 64) throw ParseError(line, t.column, "exponent out of range");
      }
      if (!any_exp_digit) throw ParseError(line, t.column, "malformed value '" + s + "'");
      exp10 += exp_negative ? -e : e;
    } else {
      switch (ch) {
        case 'k': exp10 += 3; break;
        case 'M': exp10 += 6; break;
        case 'G': exp10 += 9; break;
        case 'm': exp10 -= 3; break;
        case 'u': exp10 -= 6; break;
        case 'n': exp10 -= 9; break;
        case 'p': exp10 -= 12; break;
        default: throw ParseError(line, t.column, "malformed value '" + s + "'");
      }
      ++i;
    }
  }
  if (i != s.size()) throw ParseError(line, t.column, "malformed value '" + s + "'");
  Rational value(digits);
  if (exp10 > 0)
    value *= Rational(pow10(exp10));
  else if (exp10 < 0)
    value /= Rational(pow10(-exp10));
  if (negative || value == 0) throw ParseError(line, t.column, "value must be positive");
  return value;
}

inline std::string upper(const std::string& s) {
  std::string out = s;
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace detail

/// Parse netlist text into a Circuit.
///
/// Grammar, one statement per line:
///   `# ...`                 comment to end of line (also after a statement)
///   `NAME node1 node2 VALUE` component; NAME is R/L/C (any case) + digits,
///                           nodes are non-negative integers, VALUE is a
///                           positive decimal such as 470, 3.3, 1e-6, 10k
///   `VIN n+ n-`             the excitation source (exactly one)
///   `OUT n+ n-`             the probe (exactly one)
///
/// Category names are assigned in file order: R and L branches get Z1, Z2,
/// ... and C branches get Y1, Y2, ... Duplicate names (case-insensitive),
/// malformed fields, equal VIN/OUT nodes, and missing or repeated VIN/OUT
/// lines raise ParseError with the offending line and column.
inline Circuit parse_netlist(const std::string& text) {
  Circuit circuit;
  bool have_vin = false;
  bool have_out = false;
  std::set<std::string> names;
  int z_index = 0;
  int y_index = 0;

  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = nl + 1;
  }

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    const auto tokens = detail::tokenize_line(lines[li]);
    if (tokens.empty()) continue;
    const int eol_column = tokens.back().column + static_cast<int>(tokens.back().text.size());
    const std::string keyword = detail::upper(tokens[0].text);

    if (keyword == "VIN" || keyword == "OUT") {
      if (tokens.size() < 3)
        throw ParseError(line_no, eol_column, "expected " + keyword + " n+ n-");
      if (tokens.size() > 3)
        throw ParseError(line_no, tokens[3].column, "unexpected token '" + tokens[3].text + "'");
      const int plus = detail::parse_node(tokens[1], line_no);
      const int minus = detail::parse_node(tokens[2], line_no);
      if (plus == minus)
        throw ParseError(line_no, tokens[2].column, keyword + " nodes must be distinct");
      if (keyword == "VIN") {
        if (have_vin) throw ParseError(line_no, tokens[0].column, "duplicate VIN line");
        have_vin = true;
        // stored so that first -> second is the positive direction n- -> n+
        circuit.transmitter =
            Branch{minus, plus, true, "g", "", BranchKind::Transmitter, Rational(0)};
      } else {
        if (have_out) throw ParseError(line_no, tokens[0].column, "duplicate OUT line");
        have_out = true;
        // stored so that first -> second is the positive direction n+ -> n-
        circuit.receptor =
            Branch{plus, minus, true, "h", "", BranchKind::Receptor, Rational(0)};
      }
      continue;
    }

    // component line
    const std::string name = keyword;
    BranchKind kind;
    switch (name[0]) {
      case 'R': kind = BranchKind::Resistor; break;
      case 'L': kind = BranchKind::Inductor; break;
      case 'C': kind = BranchKind::Capacitor; break;
      default:
        throw ParseError(line_no, tokens[0].column, "component name must start with R, L, or C");
    }
    if (name.size() < 2)
      throw ParseError(line_no, tokens[0].column, "component name needs a numeric index");
    for (std::size_t k = 1; k < name.size(); ++k)
      if (name[k] < '0' || name[k] > '9')
        throw ParseError(line_no, tokens[0].column,
                         "component name must be a kind letter followed by digits");
    if (!names.insert(name).second)
      throw ParseError(line_no, tokens[0].column, "duplicate component name '" + name + "'");
    if (tokens.size() < 4)
      throw ParseError(line_no, eol_column, "expected NAME node1 node2 VALUE");
    if (tokens.size() > 4)
      throw ParseError(line_no, tokens[4].column, "unexpected token '" + tokens[4].text + "'");
    const int node1 = detail::parse_node(tokens[1], line_no);
    const int node2 = detail::parse_node(tokens[2], line_no);
    const Rational value = detail::parse_value(tokens[3], line_no);
    const std::string category = kind == BranchKind::Capacitor
                                     ? "Y" + std::to_string(++y_index)
                                     : "Z" + std::to_string(++z_index);
    circuit.components.push_back(Branch{node1, node2, false, name, category, kind, value});
  }

  const int last_line = static_cast<int>(lines.size());
  if (!have_vin) throw ParseError(last_line, 1, "missing VIN line");
  if (!have_out) throw ParseError(last_line, 1, "missing OUT line");
  return circuit;
}

namespace detail {
/// Exact decimal rendering of a parsed value: an integer, with a base-10
/// exponent when the denominator is a power of 2 and 5.
inline std::string render_value(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  long long twos = 0;
  long long fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1)
    throw std::invalid_argument("component value has no finite decimal representation");
  // num / (2^a 5^b) = num * 2^(k-a) 5^(k-b) / 10^k with k = max(a, b)
  const long long shift = twos > fives ? twos : fives;
  const BigInt scaled = num *
                        boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(shift - twos)) *
                        boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(shift - fives));
  std::string out = scaled.str();
  if (shift > 0) out += "e-" + std::to_string(shift);
  return out;
}
}  // namespace detail

/// Serialize a Circuit back to netlist text; parse_netlist(to_netlist(c))
/// reproduces c exactly.
inline std::string to_netlist(const Circuit& c) {
  std::string out;
  for (const Branch& b : c.components)
    out += b.nature_name + " " + std::to_string(b.first_node) + " " +
           std::to_string(b.second_node) + " " + detail::render_value(b.value) + "\n";
  out += "VIN " + std::to_string(c.transmitter.second_node) + " " +
         std::to_string(c.transmitter.first_node) + "\n";
  out += "OUT " + std::to_string(c.receptor.first_node) + " " +
         std::to_string(c.receptor.second_node) + "\n";
  return out;
}

}  // namespace topo
