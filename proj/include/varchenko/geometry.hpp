#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "varchenko/topes.hpp"
#include "varchenko/wiring_diagram.hpp"

namespace varchenko {

using RegionId = std::size_t;
using PointId = std::size_t;  // index of the event that creates the point

struct RegionGeometry {
  RegionId id = 0;
  Tope tope;
  // Gap occupied in each slab; gap g lies between positions g-1 and g.
  std::vector<std::optional<std::size_t>> slab_gaps;
  // (neighbour, line crossed), sorted.
  std::vector<std::pair<RegionId, LineId>> adjacency;
  std::vector<PointId> incident_points;
};

enum class ElementKind { Plane, Line, Point };

struct PosetElement {
  ElementKind kind = ElementKind::Plane;
  std::size_t index = 0;  // line id or point id; 0 for the plane
  std::vector<LineId> lines_through;

  int rank() const { return kind == ElementKind::Plane ? 0 : kind == ElementKind::Line ? 1 : 2; }
  bool is_degenerate() const { return kind == ElementKind::Point && lines_through.size() >= 3; }

  std::string label() const {
    if (kind == ElementKind::Plane) return "plane";
    if (kind == ElementKind::Line) return "L" + std::to_string(index + 1);
    std::string s = "P" + std::to_string(index + 1) + "{";
    for (std::size_t i = 0; i < lines_through.size(); ++i) s += (i ? "," : "") + std::to_string(lines_through[i] + 1);
    return s + "}";
  }

  friend bool operator==(const PosetElement&, const PosetElement&) = default;
};

// One piece of a wire in left-to-right order: an edge between two consecutive
// events on the wire, or the vertex of such an event.
struct LineItem {
  bool is_vertex = false;
  PointId point = 0;     // vertex only
  RegionId below = 0;    // edge only
  RegionId above = 0;    // edge only
};

class ArrangementGeometry {
 public:
  explicit ArrangementGeometry(WiringDiagram w) : diagram_(std::move(w)) {
    const std::size_t n = diagram_.wires();
    const auto& events = diagram_.events();
    std::vector<RegionId> gaps(n + 1);
    for (std::size_t g = 0; g <= n; ++g) gaps[g] = g;
    RegionId next = n + 1;
    gap_map_.push_back(gaps);
    for (const auto& e : events) {
      for (std::size_t g = e.bottom; g < e.bottom + e.size - 1; ++g) gaps[g] = next++;
      gap_map_.push_back(gaps);
    }

    regions_.resize(next);
    for (RegionId r = 0; r < next; ++r) {
      regions_[r].id = r;
      regions_[r].slab_gaps.assign(diagram_.slab_count(), std::nullopt);
    }
    for (std::size_t j = 0; j < diagram_.slab_count(); ++j)
      for (std::size_t g = 0; g <= n; ++g) {
        auto& reg = regions_[gap_map_[j][g]];
        reg.slab_gaps[j] = g;
        if (reg.tope.size() == 0) {
          std::vector<Sign> signs(n);
          const auto& order = diagram_.slab_order(j);
          for (std::size_t p = 0; p < n; ++p) signs[order[p]] = p < g ? Sign::Plus : Sign::Minus;
          reg.tope = Tope(std::move(signs));
        }
      }
    topes_.reserve(next);
    for (const auto& reg : regions_) topes_.push_back(reg.tope);

    for (std::size_t j = 0; j < diagram_.slab_count(); ++j)
      for (std::size_t p = 0; p < n; ++p) {
        RegionId a = gap_map_[j][p], b = gap_map_[j][p + 1];
        LineId line = diagram_.slab_order(j)[p];
        regions_[a].adjacency.emplace_back(b, line);
        regions_[b].adjacency.emplace_back(a, line);
      }
    for (auto& reg : regions_) {
      std::sort(reg.adjacency.begin(), reg.adjacency.end());
      reg.adjacency.erase(std::unique(reg.adjacency.begin(), reg.adjacency.end()), reg.adjacency.end());
    }

    for (PointId k = 0; k < events.size(); ++k) {
      const auto& e = events[k];
      std::vector<RegionId> c;
      for (std::size_t slab : {k, k + 1})
        for (std::size_t g = e.bottom - 1; g <= e.bottom - 1 + e.size; ++g) c.push_back(gap_map_[slab][g]);
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      for (RegionId r : c) regions_[r].incident_points.push_back(k);
      corners_.push_back(std::move(c));
    }

    line_items_.resize(n);
    for (LineId w = 0; w < n; ++w) {
      auto edge_at = [&](std::size_t slab) {
        std::size_t p = diagram_.position_of(slab, w);
        return LineItem{false, 0, gap_map_[slab][p], gap_map_[slab][p + 1]};
      };
      line_items_[w].push_back(edge_at(0));
      for (PointId k = 0; k < events.size(); ++k) {
        auto ws = diagram_.event_wires(k);
        if (std::find(ws.begin(), ws.end(), w) == ws.end()) continue;
        line_items_[w].push_back(LineItem{true, k, 0, 0});
        line_items_[w].push_back(edge_at(k + 1));
      }
    }

    poset_.push_back(PosetElement{ElementKind::Plane, 0, {}});
    for (LineId w = 0; w < n; ++w) poset_.push_back(PosetElement{ElementKind::Line, w, {w}});
    for (PointId k = 0; k < events.size(); ++k) {
      auto ws = diagram_.event_wires(k);
      std::sort(ws.begin(), ws.end());
      poset_.push_back(PosetElement{ElementKind::Point, k, ws});
    }
  }

  const WiringDiagram& diagram() const { return diagram_; }
  std::size_t wires() const { return diagram_.wires(); }
  std::size_t region_count() const { return regions_.size(); }
  const std::vector<RegionGeometry>& regions() const { return regions_; }
  const RegionGeometry& region(RegionId r) const { return regions_.at(r); }
  const std::vector<Tope>& topes() const { return topes_; }
  RegionId region_at(std::size_t slab, std::size_t gap) const { return gap_map_.at(slab).at(gap); }

  // Plane first, then lines by id, then points by event index.
  const std::vector<PosetElement>& poset() const { return poset_; }
  static std::size_t plane_element() { return 0; }
  static std::size_t line_element(LineId a) { return 1 + a; }
  std::size_t point_element(PointId k) const { return 1 + wires() + k; }

  const std::vector<LineItem>& line_items(LineId w) const { return line_items_.at(w); }
  // Regions having the point as a vertex, ascending.
  const std::vector<RegionId>& corners(PointId k) const { return corners_.at(k); }

  // The 2s regions around point k counterclockwise, starting with the one below it:
  // bottom, the s-1 regions right of the point bottom to top, top, then the
  // s-1 regions left of it top to bottom.
  std::vector<RegionId> sectors(PointId k) const {
    const auto& e = diagram_.events().at(k);
    const std::size_t b0 = e.bottom - 1, s = e.size;
    std::vector<RegionId> out{gap_map_[k][b0]};
    for (std::size_t i = 1; i < s; ++i) out.push_back(gap_map_[k + 1][b0 + i]);
    out.push_back(gap_map_[k][b0 + s]);
    for (std::size_t i = 1; i < s; ++i) out.push_back(gap_map_[k][b0 + s - i]);
    return out;
  }

  bool adjacent(RegionId a, RegionId b) const {
    const auto& adj = regions_.at(a).adjacency;
    return std::any_of(adj.begin(), adj.end(), [&](const auto& p) { return p.first == b; });
  }

 private:
  WiringDiagram diagram_;
  std::vector<std::vector<RegionId>> gap_map_;
  std::vector<RegionGeometry> regions_;
  std::vector<Tope> topes_;
  std::vector<std::vector<RegionId>> corners_;
  std::vector<std::vector<LineItem>> line_items_;
  std::vector<PosetElement> poset_;
};

inline std::vector<RegionGeometry> enumerate_regions(const WiringDiagram& w) { return ArrangementGeometry(w).regions(); }

inline std::vector<PosetElement> intersection_poset(const WiringDiagram& w) { return ArrangementGeometry(w).poset(); }

inline bool is_semigeneral(const WiringDiagram& w) { return w.degenerate_events().empty(); }

// Reverse-inclusion order of the poset: a precedes b when a's lines are a
// proper subset of b's (the plane precedes everything).
inline bool poset_less(const PosetElement& a, const PosetElement& b) {
  if (a.rank() >= b.rank()) return false;
  return std::includes(b.lines_through.begin(), b.lines_through.end(), a.lines_through.begin(), a.lines_through.end());
}

}  // namespace varchenko
