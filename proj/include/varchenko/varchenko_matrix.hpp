#pragma once

#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "varchenko/geometry.hpp"
#include "varchenko/matrix.hpp"
#include "varchenko/poly.hpp"
#include "varchenko/topes.hpp"

namespace varchenko {

// Maps each line to the indeterminate that weighs it.
class WeightAssignment {
 public:
  WeightAssignment() = default;
  explicit WeightAssignment(std::vector<VariableId> vars) : vars_(std::move(vars)) {
    std::set<VariableId> seen(vars_.begin(), vars_.end());
    if (seen.size() != vars_.size()) throw std::invalid_argument("two lines share a weight variable");
    for (auto v : vars_)
      if (v.index == 0 || v.index > Monomial::kMaxVariables) throw std::invalid_argument("weight variable out of range");
  }

  // Line a gets x_{a+1}.
  static WeightAssignment identity(std::size_t lines) {
    std::vector<VariableId> v;
    for (std::size_t a = 0; a < lines; ++a) v.push_back(VariableId{static_cast<std::uint32_t>(a + 1)});
    return WeightAssignment(std::move(v));
  }

  std::size_t size() const { return vars_.size(); }
  VariableId of(LineId a) const { return vars_.at(a); }
  const std::vector<VariableId>& variables() const { return vars_; }

  Monomial product(const std::vector<LineId>& lines, unsigned exponent = 1) const {
    Monomial m;
    for (LineId a : lines) m = m * Monomial::variable(of(a), exponent);
    return m;
  }

 private:
  std::vector<VariableId> vars_;
};

struct VarchenkoMatrix {
  Matrix<Polynomial> entries;
  std::vector<Tope> row_labels;
  std::size_t size() const { return entries.rows(); }
};

inline VarchenkoMatrix varchenko_matrix(const std::vector<Tope>& topes, const WeightAssignment& weights) {
  std::set<Tope> distinct(topes.begin(), topes.end());
  if (distinct.size() != topes.size()) throw ValidationError("duplicate topes");
  for (const auto& t : topes)
    if (t.size() != weights.size()) throw std::invalid_argument("tope length does not match the weight count");
  const std::size_t r = topes.size();
  VarchenkoMatrix v{Matrix<Polynomial>(r, r), topes};
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) v.entries(i, j) = v.entries(j, i) = Polynomial(weights.product(separation_set(topes[i], topes[j])));
  return v;
}

// The product of (1 - x_a^2) over the lines through the element.
inline Polynomial element_diagonal_entry(const PosetElement& e, const WeightAssignment& weights) {
  Polynomial p(1);
  for (LineId a : e.lines_through) p *= one_minus_square(std::vector<VariableId>{weights.of(a)});
  return p;
}

// One entry per poset element, in poset order. With nondegenerate_only the
// degenerate points are left out.
inline std::vector<Polynomial> predicted_diagonal_entries(const std::vector<PosetElement>& poset, const WeightAssignment& weights,
                                                          bool nondegenerate_only = false) {
  std::vector<Polynomial> out;
  for (const auto& e : poset)
    if (!(nondegenerate_only && e.is_degenerate())) out.push_back(element_diagonal_entry(e, weights));
  return out;
}

struct LeftoverMatrix {
  std::size_t n = 0;
  std::vector<VariableId> variable_order;
  Matrix<Polynomial> entries;
  friend bool operator==(const LeftoverMatrix&, const LeftoverMatrix&) = default;
};

// Entry (i, i+j), 1-based, is x_{i+1}...x_{i+j} (1 - x_1^2...x_i^2)(1 - x_{i+j+1}^2...x_n^2)
// with x_t standing for vars[t-1].
inline LeftoverMatrix leftover_matrix(const std::vector<VariableId>& vars) {
  const std::size_t n = vars.size();
  if (n < 3) throw std::invalid_argument("leftover matrices need at least three lines");
  LeftoverMatrix L{n, vars, Matrix<Polynomial>(n - 1, n - 1)};
  auto span_of = [&](std::size_t from, std::size_t to) {  // vars[from-1..to-1], 1-based inclusive
    return std::vector<VariableId>(vars.begin() + static_cast<std::ptrdiff_t>(from - 1), vars.begin() + static_cast<std::ptrdiff_t>(to));
  };
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) {
      Monomial middle;
      for (auto v : span_of(i + 1, i + j)) middle = middle * Monomial::variable(v);
      Polynomial e = Polynomial(middle) * one_minus_square(span_of(1, i)) * one_minus_square(span_of(i + j + 1, n));
      L.entries(i - 1, i + j - 1) = e;
      L.entries(i + j - 1, i - 1) = e;
    }
  return L;
}

inline LeftoverMatrix leftover_matrix(std::size_t n) {
  return leftover_matrix(WeightAssignment::identity(n).variables());
}

inline Polynomial leftover_determinant(const std::vector<VariableId>& vars) {
  const std::size_t n = vars.size();
  if (n < 3) throw std::invalid_argument("leftover matrices need at least three lines");
  Polynomial p(1);
  for (auto v : vars) p *= one_minus_square(std::vector<VariableId>{v});
  Polynomial all = one_minus_square(vars);
  for (std::size_t i = 0; i + 2 < n; ++i) p *= all;
  return p;
}

// Exponent of (1 - x_M) in the determinant: lines count themselves and every
// point on them, degenerate points of multiplicity s count s-2, the rest 0.
inline std::size_t determinant_exponent(const PosetElement& e, const std::vector<PosetElement>& poset) {
  switch (e.kind) {
    case ElementKind::Plane:
      return 0;
    case ElementKind::Line: {
      std::size_t count = 1;
      for (const auto& other : poset)
        if (other.kind == ElementKind::Point && std::binary_search(other.lines_through.begin(), other.lines_through.end(), e.index)) ++count;
      return count;
    }
    case ElementKind::Point:
      return e.lines_through.size() >= 3 ? e.lines_through.size() - 2 : 0;
  }
  return 0;
}

// The determinant formula as (factor, exponent) pairs, factor = 1 - x_M.
inline std::vector<std::pair<Polynomial, std::size_t>> varchenko_determinant_factors(const std::vector<PosetElement>& poset,
                                                                                     const WeightAssignment& weights) {
  std::vector<std::pair<Polynomial, std::size_t>> out;
  for (const auto& e : poset) {
    std::size_t exp = determinant_exponent(e, poset);
    if (exp != 0) out.emplace_back(Polynomial(1) - Polynomial(weights.product(e.lines_through, 2)), exp);
  }
  return out;
}

// Fully expanded; the expansion grows quickly with the number of lines.
inline Polynomial varchenko_determinant_formula(const std::vector<PosetElement>& poset, const WeightAssignment& weights) {
  Polynomial p(1);
  for (const auto& [factor, exp] : varchenko_determinant_factors(poset, weights))
    for (std::size_t i = 0; i < exp; ++i) p *= factor;
  return p;
}

inline std::string format_factored(const std::vector<std::pair<Polynomial, std::size_t>>& factors) {
  if (factors.empty()) return "1";
  std::string out;
  for (const auto& [f, exp] : factors) {
    if (!out.empty()) out += " * ";
    out += "(" + to_string(f) + ")";
    if (exp > 1) out += "^" + std::to_string(exp);
  }
  return out;
}

// Evaluates the formula factor by factor, which is far cheaper than expanding it.
inline Rational varchenko_determinant_formula_at(const std::vector<PosetElement>& poset, const WeightAssignment& weights,
                                                 const Assignment& at) {
  Rational value = 1;
  for (const auto& e : poset) {
    std::size_t exp = determinant_exponent(e, poset);
    if (exp == 0) continue;
    Rational factor = 1 - evaluate(Polynomial(weights.product(e.lines_through, 2)), at);
    value *= power(factor, static_cast<unsigned>(exp));
  }
  return value;
}

// `matrix r` followed by one `i j <poly>` line per nonzero entry, 1-based.
inline std::string format_entries(const Matrix<Polynomial>& m) {
  std::ostringstream out;
  out << "matrix " << m.rows() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out << i + 1 << ' ' << j + 1 << ' ' << to_string(m(i, j)) << '\n';
  return out.str();
}

inline std::string format_grid(const Matrix<Polynomial>& m) {
  std::vector<std::size_t> width(m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) width[j] = std::max(width[j], to_string(m(i, j)).size());
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::string s = to_string(m(i, j));
      out << (j ? "  " : "") << s;
      if (j + 1 < m.cols()) out << std::string(width[j] - s.size(), ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace varchenko
