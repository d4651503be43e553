#include <gtest/gtest.h>

#include <algorithm>

#include "test_support.hpp"
#include "varchenko/geometry.hpp"
#include "varchenko/oracle.hpp"
#include "varchenko/varchenko_matrix.hpp"

using namespace varchenko;
using varchenko::testing::corpus;
using varchenko::testing::load_diagram;
using varchenko::testing::P;
using varchenko::testing::vars;

namespace {

VarchenkoMatrix matrix_of(const WiringDiagram& w) {
  ArrangementGeometry geo(w);
  return varchenko_matrix(geo.topes(), WeightAssignment::identity(w.wires()));
}

std::vector<std::string> sorted_strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(to_string(p));
  std::sort(out.begin(), out.end());
  return out;
}

Polynomial basic_formula(std::size_t n) {
  Polynomial p(1);
  for (std::uint32_t i = 1; i <= n; ++i) p *= one_minus_square(vars({i})) * one_minus_square(vars({i}));
  Polynomial all = one_minus_square(WeightAssignment::identity(n).variables());
  for (std::size_t i = 0; i + 2 < n; ++i) p *= all;
  return p;
}

}  // namespace

TEST(VarchenkoMatrixBuild, SingleLine) {
  auto v = matrix_of(parse_wiring_diagram("wires 1\n"));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v.entries(0, 0), P("1"));
  EXPECT_EQ(v.entries(0, 1), P("x1"));
  EXPECT_EQ(v.entries(1, 0), P("x1"));
  EXPECT_EQ(v.entries(1, 1), P("1"));
}

TEST(VarchenkoMatrixBuild, TwoCrossingLinesFromTopeFile) {
  auto topes = topes_from_file(varchenko::testing::read_fixture("two_lines.topes"));
  auto v = varchenko_matrix(topes, WeightAssignment::identity(2));
  // Rows ++, +-, -+, --.
  EXPECT_EQ(v.entries(0, 1), P("x2"));
  EXPECT_EQ(v.entries(0, 2), P("x1"));
  EXPECT_EQ(v.entries(0, 3), P("x1*x2"));
  EXPECT_EQ(v.entries(1, 2), P("x1*x2"));
  EXPECT_EQ(v.entries(1, 3), P("x1"));
  EXPECT_EQ(v.entries(2, 3), P("x2"));
}

TEST(VarchenkoMatrixBuild, BasicTriplePointOppositeRegions) {
  ArrangementGeometry geo(load_diagram("basic3.wd"));
  auto v = varchenko_matrix(geo.topes(), WeightAssignment::identity(3));
  auto sec = geo.sectors(0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(v.entries(sec[i], sec[i + 3]), P("x1*x2*x3"));
  // Brute force over all 15 pairs against the tope definition.
  for (RegionId a = 0; a < 6; ++a)
    for (RegionId b = a + 1; b < 6; ++b) {
      Monomial m;
      for (LineId l = 0; l < 3; ++l)
        if (geo.topes()[a][l] != geo.topes()[b][l]) m = m * Monomial::variable(VariableId{static_cast<std::uint32_t>(l + 1)});
      EXPECT_EQ(v.entries(a, b), Polynomial(m));
    }
}

TEST(VarchenkoMatrixBuild, RejectsDuplicatesAndLengthMismatch) {
  Tope t({Sign::Plus});
  EXPECT_THROW(varchenko_matrix({t, t}, WeightAssignment::identity(1)), ValidationError);
  EXPECT_THROW(varchenko_matrix({t, t.negated()}, WeightAssignment::identity(2)), std::invalid_argument);
}

TEST(WeightAssignmentTest, RejectsSharedVariables) {
  EXPECT_THROW(WeightAssignment(vars({1, 1})), std::invalid_argument);
  EXPECT_THROW(WeightAssignment(vars({0})), std::invalid_argument);
}

// Permuting weights permutes the variables in every entry.
TEST(VarchenkoMatrixBuild, RenamingWeightsRenamesEntries) {
  ArrangementGeometry geo(load_diagram("two_triple.wd"));
  auto v = varchenko_matrix(geo.topes(), WeightAssignment::identity(5));
  auto u = varchenko_matrix(geo.topes(), WeightAssignment(vars({2, 3, 1, 5, 4})));
  Assignment at;
  for (std::uint32_t i = 1; i <= 5; ++i) at[VariableId{i}] = Rational(i + 1, 7);
  Assignment renamed{{VariableId{2}, at[VariableId{1}]}, {VariableId{3}, at[VariableId{2}]}, {VariableId{1}, at[VariableId{3}]},
                     {VariableId{5}, at[VariableId{4}]}, {VariableId{4}, at[VariableId{5}]}};
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) EXPECT_EQ(evaluate(v.entries(i, j), at), evaluate(u.entries(i, j), renamed));
}

class VarchenkoMatrixCorpus : public ::testing::TestWithParam<std::size_t> {};

// Symmetric, unit diagonal, and sep(a,c) is the symmetric difference of
// sep(a,b) and sep(b,c), so V_ab V_bc = V_ac times a square.
TEST_P(VarchenkoMatrixCorpus, SymmetryAndTriangleRelation) {
  for (const auto& w : corpus(GetParam())) {
    auto v = matrix_of(w);
    EXPECT_TRUE(v.entries.is_symmetric());
    for (std::size_t a = 0; a < v.size(); ++a) {
      EXPECT_EQ(v.entries(a, a), P("1"));
      for (std::size_t b = 0; b < v.size(); ++b)
        for (std::size_t c = 0; c < v.size(); ++c) {
          auto q = try_exact_div(v.entries(a, b) * v.entries(b, c), v.entries(a, c));
          ASSERT_TRUE(q);
          ASSERT_EQ(q->terms().size(), 1u);
          for (std::uint32_t x = 1; x <= w.wires(); ++x) EXPECT_EQ(q->terms()[0].monomial.exponent(VariableId{x}) % 2, 0u);
        }
    }
  }
}

TEST_P(VarchenkoMatrixCorpus, DeterminantFormulaAtSeededPoints) {
  for (const auto& w : corpus(GetParam())) {
    ArrangementGeometry geo(w);
    auto weights = WeightAssignment::identity(w.wires());
    auto v = varchenko_matrix(geo.topes(), weights);
    auto at = oracle::random_assignment(weights.variables(), 3);
    EXPECT_EQ(oracle::brute_determinant(v.entries, at), varchenko_determinant_formula_at(geo.poset(), weights, at)) << to_text(w);
  }
}

INSTANTIATE_TEST_SUITE_P(UpToFourWires, VarchenkoMatrixCorpus, ::testing::Values(1, 2, 3, 4));

TEST(PredictedDiagonal, TwoCrossingLines) {
  auto poset = intersection_poset(load_diagram("two_lines.wd"));
  EXPECT_EQ(sorted_strings(predicted_diagonal_entries(poset, WeightAssignment::identity(2))),
            sorted_strings({P("1"), P("1-x1^2"), P("1-x2^2"), P("(1-x1^2)*(1-x2^2)")}));
}

TEST(PredictedDiagonal, SingleLine) {
  auto poset = intersection_poset(parse_wiring_diagram("wires 1\n"));
  EXPECT_EQ(sorted_strings(predicted_diagonal_entries(poset, WeightAssignment::identity(1))),
            sorted_strings({P("1"), P("1-x1^2")}));
}

TEST(PredictedDiagonal, TwoTriplePointsNondegeneratePart) {
  auto poset = intersection_poset(load_diagram("two_triple.wd"));
  EXPECT_EQ(sorted_strings(predicted_diagonal_entries(poset, WeightAssignment::identity(5), true)),
            sorted_strings({P("1"), P("1-x1^2"), P("1-x2^2"), P("1-x3^2"), P("1-x4^2"), P("1-x5^2")}));
}

TEST(Leftover, ThreeLines) {
  auto L = leftover_matrix(3);
  EXPECT_EQ(L.entries(0, 0), P("(1-x1^2)*(1-x2^2*x3^2)"));
  EXPECT_EQ(L.entries(0, 1), P("x2*(1-x1^2)*(1-x3^2)"));
  EXPECT_EQ(L.entries(1, 0), P("x2*(1-x1^2)*(1-x3^2)"));
  EXPECT_EQ(L.entries(1, 1), P("(1-x1^2*x2^2)*(1-x3^2)"));
}

TEST(Leftover, ReorderedVariables) {
  auto L = leftover_matrix(vars({4, 2, 5}));
  EXPECT_EQ(L.entries(0, 0), P("(1-x4^2)*(1-x2^2*x5^2)"));
  EXPECT_EQ(L.entries(0, 1), P("x2*(1-x4^2)*(1-x5^2)"));
  EXPECT_EQ(L.entries(1, 1), P("(1-x4^2*x2^2)*(1-x5^2)"));
}

TEST(Leftover, DeterminantClosedForms) {
  EXPECT_EQ(leftover_determinant(vars({1, 2, 3})), P("(1-x1^2)*(1-x2^2)*(1-x3^2)*(1-x1^2*x2^2*x3^2)"));
  EXPECT_EQ(leftover_determinant(vars({1, 2, 3, 4})),
            P("(1-x1^2)*(1-x2^2)*(1-x3^2)*(1-x4^2)*(1-x1^2*x2^2*x3^2*x4^2)^2"));
  EXPECT_THROW(leftover_matrix(2), std::invalid_argument);
}

class LeftoverSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(LeftoverSizes, CofactorDeterminantMatchesClosedForm) {
  auto L = leftover_matrix(GetParam());
  EXPECT_TRUE(L.entries.is_symmetric());
  EXPECT_EQ(oracle::symbolic_determinant(L.entries), leftover_determinant(L.variable_order));
}

INSTANTIATE_TEST_SUITE_P(ThreeToSix, LeftoverSizes, ::testing::Values(3, 4, 5, 6));

TEST(DeterminantFormula, TwoCrossingLines) {
  auto poset = intersection_poset(load_diagram("two_lines.wd"));
  EXPECT_EQ(varchenko_determinant_formula(poset, WeightAssignment::identity(2)), P("(1-x1^2)^2*(1-x2^2)^2"));
  EXPECT_EQ(oracle::symbolic_determinant(matrix_of(load_diagram("two_lines.wd")).entries), P("(1-x1^2)^2*(1-x2^2)^2"));
}

TEST(DeterminantFormula, BasicArrangements) {
  for (std::size_t n = 3; n <= 5; ++n) {
    auto poset = intersection_poset(parse_wiring_diagram("wires " + std::to_string(n) + "\nevent 1 " + std::to_string(n) + "\n"));
    EXPECT_EQ(varchenko_determinant_formula(poset, WeightAssignment::identity(n)), basic_formula(n));
  }
}

TEST(DeterminantFormula, BasicThreeMatchesSymbolicDeterminant) {
  auto v = matrix_of(load_diagram("basic3.wd"));
  EXPECT_EQ(oracle::symbolic_determinant(v.entries), basic_formula(3));
}

TEST(DeterminantFormula, FactoredRendering) {
  auto poset = intersection_poset(load_diagram("basic3.wd"));
  EXPECT_EQ(format_factored(varchenko_determinant_factors(poset, WeightAssignment::identity(3))),
            "(1 - x1^2)^2 * (1 - x2^2)^2 * (1 - x3^2)^2 * (1 - x1^2*x2^2*x3^2)");
}

TEST(MatrixFormat, EntriesListsNonzeroEntries) {
  auto v = matrix_of(load_diagram("two_lines.wd"));
  auto text = format_entries(v.entries);
  EXPECT_EQ(text.substr(0, 9), "matrix 4\n");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 17);
}
