#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "varchenko/elimination.hpp"
#include "varchenko/oracle.hpp"
#include "varchenko/varchenko_matrix.hpp"

namespace varchenko {

struct VerificationReport {
  struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
  };
  std::vector<Check> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  std::string to_text() const {
    std::string out;
    for (const auto& c : checks) {
      out += (c.passed ? "PASS " : "FAIL ") + c.name;
      if (!c.detail.empty()) out += ": " + c.detail;
      out += '\n';
    }
    return out;
  }
};

// Factors 1 - x_M over all lines and points; random evaluation points avoid their zeros.
inline std::vector<Polynomial> singular_factors(const std::vector<PosetElement>& poset, const WeightAssignment& weights) {
  std::vector<Polynomial> out;
  for (const auto& e : poset)
    if (e.kind != ElementKind::Plane) out.push_back(Polynomial(1) - Polynomial(weights.product(e.lines_through, 2)));
  return out;
}

inline Polynomial block_determinant(const Matrix<Polynomial>& m) {
  return m.rows() <= 7 ? oracle::symbolic_determinant(m) : oracle::symbolic_bareiss_determinant(m);
}

inline VerificationReport verify_block_form(const BlockDiagonalForm& bdf, const VarchenkoMatrix& v, const std::vector<PosetElement>& poset,
                                            const WeightAssignment& weights, std::uint64_t seed = 1) {
  VerificationReport report;
  const auto avoid = singular_factors(poset, weights);
  const auto& vars = weights.variables();

  {
    VerificationReport::Check c{"transformation-identity", true, ""};
    for (std::uint64_t i = 0; i < 3 && c.passed; ++i) {
      auto at = oracle::random_assignment(vars, seed + 1000 * i, avoid);
      auto lhs = bdf.trace.left_at(at) * v.entries.map([&](const Polynomial& p) { return evaluate(p, at); }) * bdf.trace.right_at(at);
      auto rhs = bdf.final_matrix.map([&](const Polynomial& p) { return evaluate(p, at); });
      if (!(lhs == rhs)) c = {c.name, false, "left*V*right differs from the block form at assignment " + std::to_string(i + 1)};
    }
    report.checks.push_back(c);
  }
  {
    auto at = oracle::random_assignment(vars, seed, avoid);
    Rational dl = oracle::rational_determinant(bdf.trace.left_at(at));
    Rational dr = oracle::rational_determinant(bdf.trace.right_at(at));
    bool ok = (dl == 1 || dl == -1) && (dr == 1 || dr == -1);
    report.checks.push_back({"unit-determinant", ok, ok ? "" : "det(left) = " + dl.str() + ", det(right) = " + dr.str()});
  }
  {
    std::vector<std::string> got, want;
    for (const auto& b : bdf.blocks)
      if (const auto* s = std::get_if<ScalarBlock>(&b)) got.push_back(to_string(s->entry));
    for (const auto& p : predicted_diagonal_entries(poset, weights, true)) want.push_back(to_string(p));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    bool ok = got == want;
    report.checks.push_back({"diagonal-entries", ok,
                             ok ? "" : std::to_string(got.size()) + " scalar blocks do not match " + std::to_string(want.size()) + " predicted entries"});
  }
  {
    VerificationReport::Check c{"leftover-blocks", true, ""};
    for (const auto& b : bdf.blocks) {
      const auto* l = std::get_if<LeftoverBlock>(&b);
      if (!l) continue;
      const auto& e = poset.at(l->element);
      std::vector<VariableId> through;
      for (LineId a : e.lines_through) through.push_back(weights.of(a));
      auto order = l->matrix.variable_order;
      std::sort(order.begin(), order.end());
      std::sort(through.begin(), through.end());
      std::size_t size = l->matrix.n - 1;
      bool ok = order == through && leftover_matrix(l->matrix.variable_order) == l->matrix &&
                bdf.final_matrix.submatrix(l->position, l->position, size, size) == l->matrix.entries;
      if (!ok) c = {c.name, false, "block at " + e.label() + " is not a leftover matrix in its lines"};
    }
    report.checks.push_back(c);
  }
  {
    // Each block determinant is divided exactly by formula factors until every
    // factor is used up. All quotients ending at 1 proves the identity without
    // expanding the formula, which is out of reach for larger arrangements.
    std::vector<Polynomial> remaining;
    for (const auto& b : bdf.blocks) {
      if (const auto* s = std::get_if<ScalarBlock>(&b))
        remaining.push_back(s->entry);
      else
        remaining.push_back(block_determinant(std::get<LeftoverBlock>(b).matrix.entries));
    }
    bool ok = true;
    for (const auto& [factor, exp] : varchenko_determinant_factors(poset, weights))
      for (std::size_t i = 0; i < exp && ok; ++i) {
        ok = false;
        for (auto& d : remaining)
          if (auto q = try_exact_div(d, factor)) {
            d = std::move(*q);
            ok = true;
            break;
          }
      }
    ok = ok && std::all_of(remaining.begin(), remaining.end(), [](const Polynomial& d) { return d.is_one(); });
    report.checks.push_back({"determinant-formula", ok, ok ? "" : "product of block determinants differs from the formula"});
  }
  return report;
}

}  // namespace varchenko
