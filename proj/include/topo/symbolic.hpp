#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "topo/rational.hpp"

namespace topo {

/// Product part of one monomial: component symbols with positive exponents and
/// a power of the Laplace variable s.
struct MonomialKey {
  int s_power = 0;
  std::map<std::string, int> symbols;
  friend bool operator==(const MonomialKey&, const MonomialKey&) = default;
};

/// Canonical term order: descending power of s, then the symbol-key sequences
/// compared lexicographically (so R1^2 precedes R1*R2, and a pure constant
/// precedes any symbol term of the same s power), with descending exponents
/// breaking ties between terms over identical symbols.
struct MonomialOrder {
  bool operator()(const MonomialKey& a, const MonomialKey& b) const {
    if (a.s_power != b.s_power) return a.s_power > b.s_power;
    auto ia = a.symbols.begin();
    auto ib = b.symbols.begin();
    for (; ia != a.symbols.end() && ib != b.symbols.end(); ++ia, ++ib)
      if (ia->first != ib->first) return ia->first < ib->first;
    if (a.symbols.size() != b.symbols.size()) return a.symbols.size() < b.symbols.size();
    for (ia = a.symbols.begin(), ib = b.symbols.begin(); ia != a.symbols.end(); ++ia, ++ib)
      if (ia->second != ib->second) return ia->second > ib->second;
    return false;
  }
};

using SymbolAssignment = std::map<std::string, Rational>;

/// A sum of signed monomials in component symbols and s, with exact rational
/// coefficients. Like terms are always collected and zero terms dropped, so
/// structural equality is semantic equality; iteration order is the canonical
/// rendering order. The zero polynomial has no terms.
class TopoPolynomial {
 public:
  using TermMap = std::map<MonomialKey, Rational, MonomialOrder>;

  TopoPolynomial() = default;

  static TopoPolynomial constant(const Rational& c) { return monomial(c, {}, 0); }

  static TopoPolynomial symbol(const std::string& name) { return monomial(1, {{name, 1}}, 0); }

  static TopoPolynomial s(int power = 1) { return monomial(1, {}, power); }

  static TopoPolynomial monomial(const Rational& coeff, std::map<std::string, int> symbols,
                                 int s_power) {
    if (s_power < 0) throw std::invalid_argument("negative power of s");
    TopoPolynomial p;
    if (coeff == 0) return p;
    MonomialKey key{s_power, {}};
    for (auto& [name, exp] : symbols) {
      if (exp < 0) throw std::invalid_argument("negative exponent for symbol '" + name + "'");
      if (exp > 0) key.symbols.emplace(name, exp);
    }
    p.terms_.emplace(std::move(key), coeff);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  TopoPolynomial& operator+=(const TopoPolynomial& q) {
    for (const auto& [key, coeff] : q.terms_) {
      auto [it, fresh] = terms_.emplace(key, coeff);
      if (!fresh && (it->second += coeff) == 0) terms_.erase(it);
    }
    return *this;
  }

  TopoPolynomial operator-() const {
    TopoPolynomial p = *this;
    for (auto& [key, coeff] : p.terms_) coeff = -coeff;
    return p;
  }

  TopoPolynomial& operator-=(const TopoPolynomial& q) { return *this += -q; }

  friend TopoPolynomial operator+(TopoPolynomial p, const TopoPolynomial& q) { return p += q; }
  friend TopoPolynomial operator-(TopoPolynomial p, const TopoPolynomial& q) { return p -= q; }

  friend TopoPolynomial operator*(const TopoPolynomial& p, const TopoPolynomial& q) {
    TopoPolynomial out;
    for (const auto& [ka, ca] : p.terms_) {
      for (const auto& [kb, cb] : q.terms_) {
        MonomialKey key{ka.s_power + kb.s_power, ka.symbols};
        for (const auto& [name, exp] : kb.symbols) key.symbols[name] += exp;
        auto [it, fresh] = out.terms_.emplace(std::move(key), ca * cb);
        if (!fresh && (it->second += ca * cb) == 0) out.terms_.erase(it);
      }
    }
    return out;
  }

  TopoPolynomial& operator*=(const TopoPolynomial& q) { return *this = *this * q; }

  friend bool operator==(const TopoPolynomial&, const TopoPolynomial&) = default;

  /// Substitutes the assignment and evaluates at s with complex arithmetic.
  /// Every symbol occurring in the polynomial must be assigned.
  std::complex<double> eval(const SymbolAssignment& assignment, std::complex<double> s) const {
    std::complex<double> total = 0;
    for (const auto& [key, coeff] : terms_) {
      std::complex<double> t = to_double(term_rational(key, coeff, assignment));
      for (int i = 0; i < key.s_power; ++i) t *= s;
      total += t;
    }
    return total;
  }

  /// Sum of the magnitudes of the individually evaluated terms; an upper bound
  /// on |eval| that measures the coefficient scale before cancellation.
  double eval_scale(const SymbolAssignment& assignment, std::complex<double> s) const {
    double total = 0;
    const double mag_s = std::abs(s);
    for (const auto& [key, coeff] : terms_) {
      double t = std::abs(to_double(term_rational(key, coeff, assignment)));
      for (int i = 0; i < key.s_power; ++i) t *= mag_s;
      total += t;
    }
    return total;
  }

  /// Substitutes numeric values for the component symbols, leaving a
  /// rational-coefficient polynomial in s alone.
  TopoPolynomial substitute(const SymbolAssignment& assignment) const {
    TopoPolynomial out;
    for (const auto& [key, coeff] : terms_)
      out += monomial(term_rational(key, coeff, assignment), {}, key.s_power);
    return out;
  }

  /// Canonical text form: terms in canonical order with explicit +/- signs,
  /// symbols alphabetical within a monomial, exponents as ^k. The zero
  /// polynomial renders as "0". Equal strings iff equal polynomials.
  std::string render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, coeff] : terms_) {
      const bool neg = coeff < 0;
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      first = false;
      const Rational mag = neg ? Rational(-coeff) : coeff;
      std::vector<std::string> factors;
      if (mag != 1 || (key.symbols.empty() && key.s_power == 0))
        factors.push_back(to_string(mag));
      for (const auto& [name, exp] : key.symbols)
        factors.push_back(exp == 1 ? name : name + "^" + std::to_string(exp));
      if (key.s_power == 1) factors.push_back("s");
      else if (key.s_power > 1) factors.push_back("s^" + std::to_string(key.s_power));
      for (std::size_t i = 0; i < factors.size(); ++i)
        out += (i ? "*" : "") + factors[i];
    }
    return out;
  }

  /// Terms in canonical order as [{"coeff": "p/q", "s": k, "symbols": {...}}].
  nlohmann::ordered_json to_json() const {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [key, coeff] : terms_) {
      nlohmann::ordered_json term;
      term["coeff"] = to_string(coeff);
      term["s"] = key.s_power;
      auto syms = nlohmann::ordered_json::object();
      for (const auto& [name, exp] : key.symbols) syms[name] = exp;
      term["symbols"] = std::move(syms);
      arr.push_back(std::move(term));
    }
    return arr;
  }

 private:
  static Rational term_rational(const MonomialKey& key, const Rational& coeff,
                                const SymbolAssignment& assignment) {
    Rational r = coeff;
    for (const auto& [name, exp] : key.symbols) {
      const auto it = assignment.find(name);
      if (it == assignment.end())
        throw std::invalid_argument("no value assigned to symbol '" + name + "'");
      r *= rational_pow(it->second, exp);
    }
    return r;
  }

  TermMap terms_;
};

}  // namespace topo
