#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "varchenko/geometry.hpp"
#include "varchenko/matrix.hpp"
#include "varchenko/poly.hpp"
#include "varchenko/splitting.hpp"
#include "varchenko/varchenko_matrix.hpp"

namespace varchenko {

// A cone at a degenerate point of multiplicity s: the s-1 consecutive sectors
// counterclockwise from `start_sector` (see ArrangementGeometry::sectors),
// listed in reverse when `reversed` is set. Sector 1 is the lowest region
// right of the point, which is the default.
struct ConeChoice {
  std::size_t start_sector = 1;
  bool reversed = false;
  friend bool operator==(const ConeChoice&, const ConeChoice&) = default;
};

struct BlockSpan {
  std::size_t start = 0;
  std::size_t length = 0;
  PointId point = 0;
  ConeChoice cone;
  friend bool operator==(const BlockSpan&, const BlockSpan&) = default;
};

struct Numbering {
  std::vector<RegionId> order;
  // Poset element first encompassed at each position; empty inside block spans.
  std::vector<std::optional<std::size_t>> new_element;
  std::vector<BlockSpan> block_spans;

  const BlockSpan* span_starting_at(std::size_t position) const {
    for (const auto& b : block_spans)
      if (b.start == position) return &b;
    return nullptr;
  }
  const BlockSpan* span_containing(std::size_t position) const {
    for (const auto& b : block_spans)
      if (b.start <= position && position < b.start + b.length) return &b;
    return nullptr;
  }
};

struct NumberingOptions {
  // Cone per degenerate point; points not listed use the default cone.
  std::map<PointId, ConeChoice> cones;
  // Skip the constructive order and go straight to the search.
  bool force_search = false;
  std::size_t search_limit = 200000;
};

class NumberingNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<RegionId> cone_regions(const ArrangementGeometry& geo, PointId k, ConeChoice cone) {
  auto sec = geo.sectors(k);
  const std::size_t s = geo.diagram().events().at(k).size;
  if (cone.start_sector >= 2 * s) throw std::invalid_argument("cone start sector out of range");
  std::vector<RegionId> out;
  for (std::size_t i = 0; i + 1 < s; ++i) out.push_back(sec[(cone.start_sector + i) % (2 * s)]);
  if (cone.reversed) std::reverse(out.begin(), out.end());
  return out;
}

// Variable order of the leftover block a cone produces: the lines through
// the point bottom to top right of it, rotated to start after the cone's
// first boundary, reversed with the traversal.
inline std::vector<VariableId> cone_variable_order(const ArrangementGeometry& geo, PointId k, ConeChoice cone,
                                                   const WeightAssignment& weights) {
  const auto& e = geo.diagram().events().at(k);
  const auto& right = geo.diagram().slab_order(k + 1);
  std::vector<VariableId> out;
  for (std::size_t i = 0; i < e.size; ++i) {
    std::size_t p = (cone.start_sector + e.size - 1 + i) % e.size;
    out.push_back(weights.of(right[e.bottom - 1 + p]));
  }
  if (cone.reversed) std::reverse(out.begin(), out.end());
  return out;
}

namespace detail {

using Membership = std::vector<char>;

inline bool edge_inside(const LineItem& item, const Membership& in) { return in[item.below] && in[item.above]; }

inline bool point_inside(const ArrangementGeometry& geo, PointId k, const Membership& in) {
  const auto& c = geo.corners(k);
  return std::all_of(c.begin(), c.end(), [&](RegionId r) { return in[r] != 0; });
}

inline bool encompasses(const Membership& in, const PosetElement& e, const ArrangementGeometry& geo) {
  switch (e.kind) {
    case ElementKind::Plane:
      return std::any_of(in.begin(), in.end(), [](char c) { return c != 0; });
    case ElementKind::Line: {
      const auto& items = geo.line_items(e.index);
      return std::any_of(items.begin(), items.end(), [&](const LineItem& it) { return !it.is_vertex && edge_inside(it, in); });
    }
    case ElementKind::Point:
      return point_inside(geo, e.index, in);
  }
  return false;
}

inline std::vector<std::size_t> encompassed_elements(const Membership& in, const ArrangementGeometry& geo) {
  std::vector<std::size_t> out;
  const auto& poset = geo.poset();
  for (std::size_t i = 0; i < poset.size(); ++i)
    if (encompasses(in, poset[i], geo)) out.push_back(i);
  return out;
}

// Along every wire the encompassed edges and vertices form a single run.
inline bool lines_contiguous(const Membership& in, const ArrangementGeometry& geo) {
  for (LineId w = 0; w < geo.wires(); ++w) {
    int runs = 0;
    bool previous = false;
    for (const auto& it : geo.line_items(w)) {
      bool now = it.is_vertex ? point_inside(geo, it.point, in) : edge_inside(it, in);
      if (now && !previous) ++runs;
      previous = now;
    }
    if (runs > 1) return false;
  }
  return true;
}

inline bool edge_connected(const Membership& in, const ArrangementGeometry& geo) {
  std::vector<RegionId> stack;
  Membership seen(in.size(), 0);
  std::size_t total = 0;
  for (RegionId r = 0; r < in.size(); ++r)
    if (in[r]) {
      ++total;
      if (stack.empty()) {
        stack.push_back(r);
        seen[r] = 1;
      }
    }
  std::size_t reached = stack.size();
  while (!stack.empty()) {
    RegionId r = stack.back();
    stack.pop_back();
    for (const auto& [q, line] : geo.region(r).adjacency)
      if (in[q] && !seen[q]) {
        seen[q] = 1;
        ++reached;
        stack.push_back(q);
      }
  }
  return reached == total;
}

inline bool same_signs_on(const Tope& a, const Tope& b, const std::vector<LineId>& lines) {
  return std::all_of(lines.begin(), lines.end(), [&](LineId l) { return a[l] == b[l]; });
}

}  // namespace detail

inline bool encompasses(const std::vector<RegionId>& regions, const PosetElement& e, const ArrangementGeometry& geo) {
  detail::Membership in(geo.region_count(), 0);
  for (RegionId r : regions) in.at(r) = 1;
  return detail::encompasses(in, e, geo);
}

struct NumberingCheck {
  std::optional<std::string> error;
  std::vector<std::optional<std::size_t>> new_element;
  explicit operator bool() const { return !error; }
};

// Checks one-new-element, prefix connectivity, per-line contiguity and
// cone-first at every step. A block span must encompass exactly its point.
inline NumberingCheck check_numbering(const std::vector<RegionId>& order, const std::vector<BlockSpan>& spans,
                                      const ArrangementGeometry& geo) {
  NumberingCheck result;
  const auto& poset = geo.poset();
  const auto& topes = geo.topes();
  auto fail = [&](std::size_t pos, const std::string& why) {
    result.error = "position " + std::to_string(pos) + ": " + why;
    return result;
  };
  {
    std::vector<RegionId> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (RegionId r = 0; r < sorted.size(); ++r)
      if (sorted[r] != r || sorted.size() != geo.region_count()) return fail(0, "order is not a permutation of the regions");
  }
  detail::Membership in(geo.region_count(), 0);
  std::vector<char> done(poset.size(), 0);
  result.new_element.assign(order.size(), std::nullopt);
  std::size_t pos = 0;
  while (pos < order.size()) {
    const BlockSpan* span = nullptr;
    for (const auto& b : spans)
      if (b.start == pos) span = &b;
    std::size_t step = span ? span->length : 1;
    if (pos + step > order.size()) return fail(pos, "block span runs past the end");
    for (std::size_t i = pos; i < pos + step; ++i) in[order[i]] = 1;
    std::vector<std::size_t> fresh;
    for (std::size_t e : detail::encompassed_elements(in, geo))
      if (!done[e]) fresh.push_back(e);
    if (span) {
      if (fresh.size() != 1 || fresh[0] != geo.point_element(span->point))
        return fail(pos, "block span must encompass exactly its point");
    } else {
      if (fresh.size() != 1) return fail(pos, std::to_string(fresh.size()) + " new elements encompassed");
      const auto& e = poset[fresh[0]];
      if (e.is_degenerate()) return fail(pos, "degenerate point " + e.label() + " encompassed by a single region");
      for (std::size_t i = 0; i < pos; ++i)
        if (detail::same_signs_on(topes[order[i]], topes[order[pos]], e.lines_through))
          return fail(pos, "region " + std::to_string(order[i]) + " already lies in the cone of " + e.label());
      result.new_element[pos] = fresh[0];
    }
    for (std::size_t e : fresh) done[e] = 1;
    if (!detail::edge_connected(in, geo)) return fail(pos, "prefix is not edge-connected");
    if (!detail::lines_contiguous(in, geo)) return fail(pos, "encompassed part of a line is not contiguous");
    pos += step;
  }
  for (std::size_t e = 0; e < poset.size(); ++e)
    if (!done[e]) return fail(order.size(), poset[e].label() + " never encompassed");
  return result;
}

namespace detail {

enum class StepFailure { None, ExactDivision, MultiplierInconsistent, Unmatched };

struct StepOutcome {
  StepFailure failure = StepFailure::None;
  std::size_t row = 0;
};

// Row j -= mu * row p, then column j -= mu * column p, on the listed indices.
inline void symmetric_subtract(Matrix<Polynomial>& m, std::size_t j, std::size_t p, const Polynomial& mu,
                               const std::vector<std::size_t>& live) {
  for (std::size_t c : live)
    if (!m(p, c).is_zero()) m(j, c) -= mu * m(p, c);
  for (std::size_t c : live)
    if (!m(c, p).is_zero()) m(c, j) -= mu * m(c, p);
}

// Clears the pivot's row and column among `live`. Every multiplier must be an
// exact quotient by the pivot.
template <class Record>
StepOutcome scalar_step(Matrix<Polynomial>& m, std::size_t pivot, const std::vector<std::size_t>& live, Record&& record) {
  for (std::size_t j : live) {
    if (j == pivot || m(j, pivot).is_zero()) continue;
    auto mu = try_exact_div(m(j, pivot), m(pivot, pivot));
    if (!mu) return {StepFailure::ExactDivision, j};
    symmetric_subtract(m, j, pivot, *mu, live);
    record(j, pivot, *mu);
  }
  return {};
}

// Clears the block's columns in every other live row. Row j is reduced by the
// block row lying in the same cone at the point; its multiplier must be the
// same exact quotient for every block column.
template <class Record>
StepOutcome block_step(Matrix<Polynomial>& m, const std::vector<std::size_t>& block, const std::vector<Tope>& labels,
                       const std::vector<LineId>& point_lines, const std::vector<std::size_t>& live, Record&& record) {
  for (std::size_t j : live) {
    if (std::find(block.begin(), block.end(), j) != block.end()) continue;
    std::optional<std::size_t> t;
    for (std::size_t b : block)
      if (same_signs_on(labels[b], labels[j], point_lines)) t = b;
    if (!t) {
      for (std::size_t c : block)
        if (!m(j, c).is_zero()) return {StepFailure::Unmatched, j};
      continue;
    }
    std::optional<Polynomial> mu;
    for (std::size_t c : block) {
      if (m(*t, c).is_zero()) {
        if (!m(j, c).is_zero()) return {StepFailure::ExactDivision, j};
        continue;
      }
      auto q = try_exact_div(m(j, c), m(*t, c));
      if (!q) return {StepFailure::ExactDivision, j};
      if (mu && !(*mu == *q)) return {StepFailure::MultiplierInconsistent, j};
      mu = std::move(q);
    }
    if (!mu || mu->is_zero()) continue;
    symmetric_subtract(m, j, *t, *mu, live);
    record(j, *t, *mu);
  }
  return {};
}

// Constructive order: recursively number the diagram left of the last
// degenerate point, then the remaining first-part regions, then the block of
// regions just right of the point, then the rest of the second part.
inline void constructive_order(const WiringDiagram& w, std::vector<RegionId>& order, std::vector<BlockSpan>& spans) {
  ArrangementGeometry geo(w);
  auto degenerate = w.degenerate_events();
  if (degenerate.empty()) {
    for (RegionId r = 0; r < geo.region_count(); ++r) order.push_back(r);
    return;
  }
  const PointId k = degenerate.back();
  const auto& e = w.events()[k];
  auto split = split_at_degeneracy(geo);
  constructive_order(w.truncated(k), order, spans);
  const RegionId cut = geo.region_at(k + 1, e.bottom);
  std::set<RegionId> block;
  for (std::size_t i = 0; i + 1 < e.size; ++i) block.insert(cut + i);
  for (RegionId r : split.first_part)
    if (r >= cut) order.push_back(r);
  spans.push_back(BlockSpan{order.size(), e.size - 1, k, ConeChoice{}});
  order.insert(order.end(), block.begin(), block.end());
  for (RegionId r : split.second_part)
    if (!block.count(r)) order.push_back(r);
}

// Depth-first search for a numbering with the requested cones, eliminating as
// it goes so that orders whose multipliers fail are pruned early. Region sets
// that cannot be completed are remembered; the Schur complement of a set does
// not depend on the order its regions were taken in.
class NumberingSearch {
 public:
  NumberingSearch(const ArrangementGeometry& geo, const WeightAssignment& weights, const std::map<PointId, ConeChoice>& cones,
                  std::size_t limit)
      : geo_(geo), limit_(limit), member_(geo.region_count(), 0) {
    for (PointId k : geo.diagram().degenerate_events()) {
      ConeChoice c = cones.count(k) ? cones.at(k) : ConeChoice{};
      cones_.emplace(k, std::make_pair(c, cone_regions(geo, k, c)));
      for (RegionId r : cones_[k].second) in_cone_.insert(r);
    }
    matrix_ = varchenko_matrix(geo.topes(), weights).entries;
  }

  std::optional<Numbering> run() {
    Numbering n;
    std::vector<char> done(geo_.poset().size(), 0);
    if (!recurse(n, done, matrix_)) return std::nullopt;
    return n;
  }

  std::size_t calls() const { return calls_; }

 private:
  std::vector<std::size_t> live_indices() const {
    std::vector<std::size_t> live;
    for (RegionId r = 0; r < member_.size(); ++r)
      if (!member_[r]) live.push_back(r);
    return live;
  }

  std::vector<std::size_t> fresh_elements(const std::vector<char>& done) const {
    std::vector<std::size_t> fresh;
    for (std::size_t e : encompassed_elements(member_, geo_))
      if (!done[e]) fresh.push_back(e);
    return fresh;
  }

  bool recurse(Numbering& n, std::vector<char>& done, const Matrix<Polynomial>& m) {
    if (++calls_ > limit_) throw NumberingNotFound("numbering search exceeded its limit of " + std::to_string(limit_) + " steps");
    if (n.order.size() == geo_.region_count()) return true;
    if (failed_.count(member_)) return false;
    const auto& poset = geo_.poset();
    const auto& topes = geo_.topes();
    auto live = live_indices();

    for (const auto& [k, cone] : cones_) {
      const auto& regs = cone.second;
      if (done[geo_.point_element(k)] ||
          std::any_of(regs.begin(), regs.end(), [&](RegionId r) { return member_[r] != 0; }))
        continue;
      for (RegionId r : regs) member_[r] = 1;
      auto fresh = fresh_elements(done);
      bool ok = fresh.size() == 1 && fresh[0] == geo_.point_element(k) && edge_connected(member_, geo_) &&
                lines_contiguous(member_, geo_);
      Matrix<Polynomial> next = m;
      if (ok)
        ok = block_step(next, regs, topes, geo_.diagram().event_wires(k), live, [](auto&&...) {}).failure == StepFailure::None;
      if (ok) {
        n.block_spans.push_back(BlockSpan{n.order.size(), regs.size(), k, cone.first});
        n.order.insert(n.order.end(), regs.begin(), regs.end());
        n.new_element.insert(n.new_element.end(), regs.size(), std::nullopt);
        done[geo_.point_element(k)] = 1;
        if (recurse(n, done, next)) return true;
        done[geo_.point_element(k)] = 0;
        n.order.resize(n.order.size() - regs.size());
        n.new_element.resize(n.order.size());
        n.block_spans.pop_back();
      }
      for (RegionId r : regs) member_[r] = 0;
    }

    for (RegionId r : live) {
      if (in_cone_.count(r)) continue;
      if (!n.order.empty()) {
        const auto& adj = geo_.region(r).adjacency;
        if (std::none_of(adj.begin(), adj.end(), [&](const auto& p) { return member_[p.first] != 0; })) continue;
      }
      member_[r] = 1;
      auto fresh = fresh_elements(done);
      bool ok = fresh.size() == 1 && !poset[fresh[0]].is_degenerate();
      if (ok)
        for (RegionId q : n.order)
          if (same_signs_on(topes[q], topes[r], poset[fresh[0]].lines_through)) ok = false;
      ok = ok && lines_contiguous(member_, geo_);
      Matrix<Polynomial> next = m;
      if (ok) ok = scalar_step(next, r, live, [](auto&&...) {}).failure == StepFailure::None;
      if (ok) {
        n.order.push_back(r);
        n.new_element.push_back(fresh[0]);
        done[fresh[0]] = 1;
        if (recurse(n, done, next)) return true;
        done[fresh[0]] = 0;
        n.order.pop_back();
        n.new_element.pop_back();
      }
      member_[r] = 0;
    }
    failed_.insert(member_);
    return false;
  }

  const ArrangementGeometry& geo_;
  std::size_t limit_;
  std::size_t calls_ = 0;
  Membership member_;
  std::map<PointId, std::pair<ConeChoice, std::vector<RegionId>>> cones_;
  std::set<RegionId> in_cone_;
  std::set<Membership> failed_;
  Matrix<Polynomial> matrix_;
};

}  // namespace detail

inline Numbering good_numbering(const ArrangementGeometry& geo, const WeightAssignment& weights, const NumberingOptions& options = {}) {
  bool default_cones = std::all_of(options.cones.begin(), options.cones.end(),
                                   [](const auto& kv) { return kv.second == ConeChoice{}; });
  for (const auto& [k, cone] : options.cones)
    if (k >= geo.diagram().events().size() || !geo.diagram().is_degenerate(k))
      throw std::invalid_argument("a cone was given for P" + std::to_string(k + 1) + ", which is not a degenerate point");
  if (default_cones && !options.force_search) {
    Numbering n;
    detail::constructive_order(geo.diagram(), n.order, n.block_spans);
    auto check = check_numbering(n.order, n.block_spans, geo);
    if (check) {
      n.new_element = std::move(check.new_element);
      return n;
    }
  }
  detail::NumberingSearch search(geo, weights, options.cones, options.search_limit);
  auto found = search.run();
  if (!found) throw NumberingNotFound("no numbering exists for the requested cones");
  return *found;
}

inline Numbering good_numbering(const WiringDiagram& w, const ArrangementGeometry& geo, const std::vector<PosetElement>& poset) {
  if (!(poset == geo.poset()) || !(w == geo.diagram())) throw std::invalid_argument("geometry does not belong to the diagram");
  return good_numbering(geo, WeightAssignment::identity(w.wires()));
}

}  // namespace varchenko
