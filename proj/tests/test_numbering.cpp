#include <gtest/gtest.h>

#include "test_support.hpp"
#include "varchenko/numbering.hpp"

using namespace varchenko;
using varchenko::testing::corpus;
using varchenko::testing::load_diagram;

namespace {

Numbering default_numbering(const ArrangementGeometry& geo) {
  return good_numbering(geo, WeightAssignment::identity(geo.wires()));
}

}  // namespace

TEST(Encompasses, SingleRegionCoversThePlane) {
  ArrangementGeometry geo(load_diagram("two_lines.wd"));
  EXPECT_TRUE(encompasses({0}, geo.poset()[0], geo));
  EXPECT_FALSE(encompasses({}, geo.poset()[0], geo));
}

TEST(Encompasses, TwoRegionsAcrossALineShareAnEdge) {
  ArrangementGeometry geo(load_diagram("two_lines.wd"));
  // Gaps 0 and 1 of the first slab lie on either side of wire 0.
  RegionId a = geo.region_at(0, 0), b = geo.region_at(0, 1);
  EXPECT_TRUE(encompasses({a, b}, geo.poset()[ArrangementGeometry::line_element(0)], geo));
  EXPECT_FALSE(encompasses({a, b}, geo.poset()[ArrangementGeometry::line_element(1)], geo));
  EXPECT_FALSE(encompasses({a}, geo.poset()[ArrangementGeometry::line_element(0)], geo));
}

TEST(Encompasses, PointNeedsAllItsCorners) {
  for (std::size_t n = 3; n <= 5; ++n) {
    ArrangementGeometry geo(parse_wiring_diagram("wires " + std::to_string(n) + "\nevent 1 " + std::to_string(n) + "\n"));
    const auto& point = geo.poset()[geo.point_element(0)];
    std::vector<RegionId> all(geo.region_count());
    for (RegionId r = 0; r < all.size(); ++r) all[r] = r;
    EXPECT_TRUE(encompasses(all, point, geo));
    for (RegionId missing = 0; missing < all.size(); ++missing) {
      auto some = all;
      some.erase(some.begin() + static_cast<std::ptrdiff_t>(missing));
      EXPECT_FALSE(encompasses(some, point, geo));
    }
  }
}

TEST(Cones, RegionsAndVariables) {
  ArrangementGeometry geo(load_diagram("basic3.wd"));
  auto sec = geo.sectors(0);
  auto w = WeightAssignment::identity(3);
  EXPECT_EQ(cone_regions(geo, 0, ConeChoice{}), (std::vector<RegionId>{sec[1], sec[2]}));
  EXPECT_EQ(cone_regions(geo, 0, ConeChoice{4, true}), (std::vector<RegionId>{sec[5], sec[4]}));
  // Right of the point the wires run 3, 2, 1 from the bottom.
  auto order = cone_variable_order(geo, 0, ConeChoice{}, w);
  EXPECT_EQ(order, (std::vector<VariableId>{VariableId{3}, VariableId{2}, VariableId{1}}));
  EXPECT_THROW(cone_regions(geo, 0, ConeChoice{6, false}), std::invalid_argument);
}

TEST(GoodNumbering, TwoCrossingLines) {
  ArrangementGeometry geo(load_diagram("two_lines.wd"));
  auto n = default_numbering(geo);
  EXPECT_EQ(n.order.size(), 4u);
  EXPECT_TRUE(n.block_spans.empty());
  std::vector<std::size_t> elements;
  for (const auto& e : n.new_element) {
    ASSERT_TRUE(e);
    elements.push_back(*e);
  }
  std::sort(elements.begin(), elements.end());
  EXPECT_EQ(elements, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(GoodNumbering, BasicThreeEndsWithItsBlock) {
  auto w = load_diagram("basic3.wd");
  ArrangementGeometry geo(w);
  auto n = good_numbering(w, geo, geo.poset());
  ASSERT_EQ(n.block_spans.size(), 1u);
  EXPECT_EQ(n.block_spans[0], (BlockSpan{4, 2, 0, ConeChoice{}}));
  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < 4; ++i) first.push_back(n.new_element[i].value());
  std::sort(first.begin(), first.end());
  EXPECT_EQ(first, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_FALSE(n.new_element[4]);
  EXPECT_EQ(n.span_containing(5), &n.block_spans[0]);
  EXPECT_EQ(n.span_starting_at(5), nullptr);
}

TEST(GoodNumbering, TwoTriplePointsGiveTwoSpans) {
  ArrangementGeometry geo(load_diagram("two_triple.wd"));
  auto n = default_numbering(geo);
  ASSERT_EQ(n.block_spans.size(), 2u);
  EXPECT_EQ(n.block_spans[0].length, 2u);
  EXPECT_EQ(n.block_spans[1].length, 2u);
  EXPECT_EQ(n.block_spans[0].point, 0u);
  EXPECT_EQ(n.block_spans[1].point, 1u);
}

TEST(GoodNumbering, GeometryMustMatchDiagram) {
  ArrangementGeometry geo(load_diagram("basic3.wd"));
  EXPECT_THROW(good_numbering(load_diagram("two_lines.wd"), geo, geo.poset()), std::invalid_argument);
}

TEST(GoodNumbering, ConesOnlyAtDegeneratePoints) {
  ArrangementGeometry geo(load_diagram("triangle.wd"));
  NumberingOptions opt;
  opt.cones[0] = ConeChoice{};
  EXPECT_THROW(good_numbering(geo, WeightAssignment::identity(3), opt), std::invalid_argument);
}

TEST(CheckNumbering, RejectsBadOrders) {
  ArrangementGeometry geo(load_diagram("basic3.wd"));
  auto n = default_numbering(geo);
  EXPECT_FALSE(check_numbering(n.order, {}, geo));
  auto shortened = n.order;
  shortened.pop_back();
  EXPECT_FALSE(check_numbering(shortened, n.block_spans, geo));
  // Taking the two regions opposite each other first encompasses the plane and then nothing.
  auto sec = geo.sectors(0);
  std::vector<RegionId> order{sec[0], sec[3], sec[1], sec[2], sec[4], sec[5]};
  EXPECT_FALSE(check_numbering(order, {}, geo));
}

// The default numbering is valid on every corpus diagram, and its spans sit
// on the degenerate points in sweep order.
class NumberingCorpus : public ::testing::TestWithParam<std::size_t> {};

TEST_P(NumberingCorpus, DefaultNumberingValidates) {
  for (const auto& w : corpus(GetParam())) {
    ArrangementGeometry geo(w);
    Numbering n;
    ASSERT_NO_THROW(n = default_numbering(geo)) << to_text(w);
    auto check = check_numbering(n.order, n.block_spans, geo);
    EXPECT_TRUE(check) << to_text(w) << check.error.value_or("");
    ASSERT_EQ(n.block_spans.size(), w.degenerate_events().size());
    for (std::size_t i = 0; i < n.block_spans.size(); ++i) {
      EXPECT_EQ(n.block_spans[i].point, w.degenerate_events()[i]);
      EXPECT_EQ(n.block_spans[i].length, w.events()[n.block_spans[i].point].size - 1);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(UpToFiveWires, NumberingCorpus, ::testing::Values(2, 3, 4, 5));

// Every cone of a lone degenerate point can be made the block.
TEST(ConeSearch, EveryConeOfABasicPoint) {
  for (std::size_t n = 3; n <= 4; ++n) {
    ArrangementGeometry geo(parse_wiring_diagram("wires " + std::to_string(n) + "\nevent 1 " + std::to_string(n) + "\n"));
    for (std::size_t start = 0; start < 2 * n; ++start)
      for (bool reversed : {false, true}) {
        NumberingOptions opt;
        opt.cones[0] = ConeChoice{start, reversed};
        opt.force_search = true;
        auto num = good_numbering(geo, WeightAssignment::identity(n), opt);
        ASSERT_EQ(num.block_spans.size(), 1u);
        const auto& span = num.block_spans[0];
        std::vector<RegionId> block(num.order.begin() + static_cast<std::ptrdiff_t>(span.start),
                                    num.order.begin() + static_cast<std::ptrdiff_t>(span.start + span.length));
        EXPECT_EQ(block, cone_regions(geo, 0, opt.cones[0])) << n << " " << start << " " << reversed;
        EXPECT_TRUE(check_numbering(num.order, num.block_spans, geo));
      }
  }
}

TEST(ConeSearch, SearchFindsTheDefaultConeToo) {
  ArrangementGeometry geo(load_diagram("two_triple.wd"));
  NumberingOptions opt;
  opt.force_search = true;
  auto n = good_numbering(geo, WeightAssignment::identity(5), opt);
  EXPECT_TRUE(check_numbering(n.order, n.block_spans, geo));
  EXPECT_EQ(n.block_spans.size(), 2u);
}

TEST(ConeSearch, ExhaustedBudgetIsReported) {
  ArrangementGeometry geo(load_diagram("two_triple.wd"));
  NumberingOptions opt;
  opt.force_search = true;
  opt.search_limit = 1;
  EXPECT_THROW(good_numbering(geo, WeightAssignment::identity(5), opt), NumberingNotFound);
}
