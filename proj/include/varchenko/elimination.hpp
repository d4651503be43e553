#pragma once

#include <algorithm>
#include <functional>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "varchenko/geometry.hpp"
#include "varchenko/matrix.hpp"
#include "varchenko/numbering.hpp"
#include "varchenko/poly.hpp"
#include "varchenko/varchenko_matrix.hpp"

namespace varchenko {

class EliminationError : public std::runtime_error {
 public:
  EliminationError(const std::string& what, std::size_t pos) : std::runtime_error(what), position(pos) {}
  std::size_t position;
};

// A multiplier was not a polynomial.
class ExactDivisionFailure : public EliminationError {
 public:
  using EliminationError::EliminationError;
};
// Block columns asked for different multipliers in one row.
class MultiplierInconsistent : public EliminationError {
 public:
  using EliminationError::EliminationError;
};
// An entry outside the blocks survived the elimination.
class ResidualNonzero : public EliminationError {
 public:
  using EliminationError::EliminationError;
};
// A finished block or scalar differs from its closed form.
class StructureMismatch : public EliminationError {
 public:
  using EliminationError::EliminationError;
};

// Row `target` -= multiplier * row `pivot`, followed by the same on columns.
struct RowColumnOp {
  std::size_t target = 0;
  std::size_t pivot = 0;
  Polynomial multiplier;
};

struct ReductionTrace {
  std::vector<RegionId> permutation;  // position -> region
  std::vector<RowColumnOp> ops;

  // left * V * right equals the final matrix, with V indexed by region.
  template <class T>
  Matrix<T> left_as(const T& zero, const T& one, const std::function<T(const Polynomial&)>& convert) const {
    const std::size_t r = permutation.size();
    Matrix<T> a(r, r, zero);
    for (std::size_t p = 0; p < r; ++p) a(p, permutation[p]) = one;
    for (const auto& op : ops) {
      T mu = convert(op.multiplier);
      for (std::size_t c = 0; c < r; ++c)
        if (!(a(op.pivot, c) == zero)) a(op.target, c) -= mu * a(op.pivot, c);
    }
    return a;
  }

  Matrix<Polynomial> left() const {
    return left_as<Polynomial>(Polynomial(), Polynomial(1), [](const Polynomial& p) { return p; });
  }
  Matrix<Polynomial> right() const { return left().transposed(); }

  Matrix<Rational> left_at(const Assignment& at) const {
    return left_as<Rational>(Rational(0), Rational(1), [&](const Polynomial& p) { return evaluate(p, at); });
  }
  Matrix<Rational> right_at(const Assignment& at) const { return left_at(at).transposed(); }
};

struct ScalarBlock {
  Polynomial entry;
  std::size_t element = 0;  // poset element index
  std::size_t position = 0;
};

struct LeftoverBlock {
  LeftoverMatrix matrix;
  PointId point = 0;
  std::size_t element = 0;
  std::size_t position = 0;
};

using DiagonalBlock = std::variant<ScalarBlock, LeftoverBlock>;

struct BlockDiagonalForm {
  std::vector<DiagonalBlock> blocks;
  ReductionTrace trace;
  Numbering numbering;
  Matrix<Polynomial> final_matrix;  // indexed by numbering position
};

// Product of the weights of the lines separating region i from both m and n.
inline Monomial l_product(RegionId i, RegionId m, RegionId n, const std::vector<Tope>& topes, const WeightAssignment& weights) {
  auto a = separation_set(topes.at(i), topes.at(m));
  auto b = separation_set(topes.at(i), topes.at(n));
  std::vector<LineId> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return weights.product(both);
}

// Entry (m, n), in numbering positions, after the first k positions have been
// processed: V_{m,n} * phi(prod_{i<k} (1 - l_i(m,n)^2)).
inline Polynomial reduced_entry_closed_form(const VarchenkoMatrix& v, const Numbering& numbering, std::size_t k, std::size_t m,
                                            std::size_t n, const WeightAssignment& weights) {
  const auto& order = numbering.order;
  RegionId rm = order.at(m), rn = order.at(n);
  std::vector<Polynomial> factors;
  for (std::size_t i = 0; i < k; ++i) {
    Monomial l = l_product(order[i], rm, rn, v.row_labels, weights);
    factors.push_back(Polynomial(1) - Polynomial(l * l));
  }
  return v.entries(rm, rn) * phi_of_product(factors);
}

struct EliminationOptions {
  // Called after each scalar or block step with the number of processed positions.
  std::function<void(std::size_t, const Matrix<Polynomial>&)> observer;
};

inline BlockDiagonalForm eliminate(const VarchenkoMatrix& v, const ArrangementGeometry& geo, const Numbering& numbering,
                                   const WeightAssignment& weights, const EliminationOptions& options = {}) {
  const std::size_t r = v.size();
  if (numbering.order.size() != r) throw std::invalid_argument("numbering does not cover the matrix");
  BlockDiagonalForm out;
  out.numbering = numbering;
  out.trace.permutation = numbering.order;
  Matrix<Polynomial> m(r, r);
  std::vector<Tope> labels(r);
  for (std::size_t a = 0; a < r; ++a) {
    labels[a] = v.row_labels[numbering.order[a]];
    for (std::size_t b = 0; b < r; ++b) m(a, b) = v.entries(numbering.order[a], numbering.order[b]);
  }
  auto record = [&](std::size_t target, std::size_t pivot, const Polynomial& mu) { out.trace.ops.push_back({target, pivot, mu}); };
  auto raise = [&](const detail::StepOutcome& o, std::size_t pos) {
    std::string where = " at position " + std::to_string(pos) + ", row " + std::to_string(o.row);
    switch (o.failure) {
      case detail::StepFailure::None:
        return;
      case detail::StepFailure::ExactDivision:
        throw ExactDivisionFailure("multiplier is not a polynomial" + where, pos);
      case detail::StepFailure::MultiplierInconsistent:
        throw MultiplierInconsistent("block columns disagree on the multiplier" + where, pos);
      case detail::StepFailure::Unmatched:
        throw ExactDivisionFailure("row shares no cone with the block but meets it" + where, pos);
    }
  };

  std::size_t pos = 0;
  while (pos < r) {
    std::vector<std::size_t> live;
    for (std::size_t a = pos; a < r; ++a) live.push_back(a);
    if (const BlockSpan* span = numbering.span_starting_at(pos)) {
      std::vector<std::size_t> block;
      for (std::size_t i = 0; i < span->length; ++i) block.push_back(pos + i);
      raise(detail::block_step(m, block, labels, geo.diagram().event_wires(span->point), live, record), pos);
      auto vars = cone_variable_order(geo, span->point, span->cone, weights);
      LeftoverMatrix expected = leftover_matrix(vars);
      if (!(m.submatrix(pos, pos, span->length, span->length) == expected.entries))
        throw StructureMismatch("block at " + geo.poset()[geo.point_element(span->point)].label() + " is not the leftover matrix", pos);
      out.blocks.push_back(LeftoverBlock{expected, span->point, geo.point_element(span->point), pos});
      pos += span->length;
    } else {
      raise(detail::scalar_step(m, pos, live, record), pos);
      if (!(m(pos, pos) == reduced_entry_closed_form(v, numbering, pos, pos, pos, weights)))
        throw StructureMismatch("diagonal entry differs from its closed form", pos);
      if (!numbering.new_element.at(pos)) throw std::invalid_argument("numbering lacks the element encompassed at a scalar step");
      out.blocks.push_back(ScalarBlock{m(pos, pos), *numbering.new_element[pos], pos});
      pos += 1;
    }
    if (options.observer) options.observer(pos, m);
  }

  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      if (a == b || m(a, b).is_zero()) continue;
      const BlockSpan* sa = numbering.span_containing(a);
      if (sa && sa == numbering.span_containing(b)) continue;
      throw ResidualNonzero("entry (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + ") is not zero", a);
    }
  out.final_matrix = std::move(m);
  return out;
}

inline std::string block_label(const DiagonalBlock& b, const ArrangementGeometry& geo) {
  return std::visit([&](const auto& x) { return geo.poset().at(x.element).label(); }, b);
}

// `blocks N`, then `scalar <poly> # <label>` or `block <size> <label>` with the
// block's entries in matrix format.
inline std::string format_blocks(const BlockDiagonalForm& f, const ArrangementGeometry& geo) {
  std::string out = "blocks " + std::to_string(f.blocks.size()) + "\n";
  for (const auto& b : f.blocks) {
    if (const auto* s = std::get_if<ScalarBlock>(&b)) {
      out += "scalar " + to_string(s->entry) + " # " + block_label(b, geo) + "\n";
    } else {
      const auto& l = std::get<LeftoverBlock>(b);
      out += "block " + std::to_string(l.matrix.n - 1) + " " + block_label(b, geo) + "\n";
      out += format_entries(l.matrix.entries);
    }
  }
  return out;
}

}  // namespace varchenko
