#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "varchenko/geometry.hpp"

namespace varchenko {

class NoDegeneracyError : public std::invalid_argument {
 public:
  NoDegeneracyError() : std::invalid_argument("the arrangement has no degenerate point") {}
};

// Raised when a constructed border violates one of its guarantees.
class SplitError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A piece of the border running along `wire` through slabs first_slab..last_slab.
struct BorderSegment {
  bool upper = false;
  LineId wire = 0;
  std::size_t first_slab = 0;
  std::size_t last_slab = 0;
  friend bool operator==(const BorderSegment&, const BorderSegment&) = default;
};

struct SplitResult {
  PointId chosen_point = 0;
  std::vector<BorderSegment> border;
  std::vector<RegionId> first_part;
  std::vector<RegionId> second_part;
};

namespace detail {

// Follows a border path rightwards from the point: it starts on `start` and
// switches onto a candidate wire whenever the current wire crosses one.
inline std::vector<LineId> border_path(const WiringDiagram& w, PointId k, LineId start, const std::set<LineId>& candidates) {
  std::vector<LineId> per_slab(w.slab_count(), start);
  LineId cur = start;
  for (std::size_t j = k + 1; j < w.slab_count(); ++j) {
    per_slab[j] = cur;
    if (j == w.events().size()) break;
    auto ws = w.event_wires(j);
    if (std::find(ws.begin(), ws.end(), cur) == ws.end()) continue;
    for (LineId other : ws)
      if (other != cur && candidates.count(other)) {
        cur = other;
        break;
      }
  }
  return per_slab;
}

inline std::vector<BorderSegment> segments_of(const std::vector<LineId>& path, std::size_t from, bool upper) {
  std::vector<BorderSegment> out;
  for (std::size_t j = from; j < path.size(); ++j) {
    if (!out.empty() && out.back().wire == path[j])
      out.back().last_slab = j;
    else
      out.push_back({upper, path[j], j, j});
  }
  return out;
}

}  // namespace detail

// Splits the arrangement along a border through its rightmost degenerate point M.
// The second part is the wedge right of M between the lower and upper border
// paths; it contains the s-1 regions just right of M and no other degeneracy.
inline SplitResult split_at_degeneracy(const ArrangementGeometry& geo) {
  const WiringDiagram& w = geo.diagram();
  auto degenerate = w.degenerate_events();
  if (degenerate.empty()) throw NoDegeneracyError();
  const PointId k = degenerate.back();
  const auto& ev = w.events()[k];
  const std::size_t b0 = ev.bottom - 1, s = ev.size, n = w.wires();
  const auto& right = w.slab_order(k + 1);
  const LineId lower = right[b0], upper = right[b0 + s - 1];

  auto crosses_after = [&](LineId a, LineId b) {
    for (std::size_t j = k + 1; j < w.events().size(); ++j) {
      auto ws = w.event_wires(j);
      if (std::find(ws.begin(), ws.end(), a) != ws.end() && std::find(ws.begin(), ws.end(), b) != ws.end()) return true;
    }
    return false;
  };
  // Wires above M that later come down across the lower border wire, and wires
  // below M that later rise across the upper one.
  std::set<LineId> above_candidates, below_candidates;
  for (std::size_t p = 0; p < n; ++p) {
    if (p > b0 + s - 1 && crosses_after(right[p], lower)) above_candidates.insert(right[p]);
    if (p < b0 && crosses_after(right[p], upper)) below_candidates.insert(right[p]);
  }
  auto lo = detail::border_path(w, k, lower, above_candidates);
  auto hi = detail::border_path(w, k, upper, below_candidates);

  SplitResult result;
  result.chosen_point = k;
  result.border = detail::segments_of(lo, k + 1, false);
  auto upper_segments = detail::segments_of(hi, k + 1, true);
  result.border.insert(result.border.end(), upper_segments.begin(), upper_segments.end());

  std::map<RegionId, bool> inside;
  for (std::size_t j = k + 1; j < w.slab_count(); ++j) {
    std::size_t pl = w.position_of(j, lo[j]), ph = w.position_of(j, hi[j]);
    if (pl >= ph) throw SplitError("border paths meet in slab " + std::to_string(j));
    for (std::size_t g = 0; g <= n; ++g) {
      RegionId r = geo.region_at(j, g);
      bool in = pl < g && g <= ph;
      auto [it, fresh] = inside.emplace(r, in);
      if (!fresh && it->second != in) throw SplitError("region " + std::to_string(r) + " straddles the border");
    }
  }
  for (RegionId r = 0; r < geo.region_count(); ++r) {
    auto it = inside.find(r);
    (it != inside.end() && it->second ? result.second_part : result.first_part).push_back(r);
  }

  // Every wire changes sides at most once; wires start outside, left of M.
  for (LineId a = 0; a < n; ++a) {
    int state = 0;  // 0 outside, 1 inside
    int changes = 0;
    for (std::size_t j = k + 1; j < w.slab_count(); ++j) {
      if (lo[j] == a || hi[j] == a) continue;
      std::size_t p = w.position_of(j, a);
      int now = (w.position_of(j, lo[j]) < p && p < w.position_of(j, hi[j])) ? 1 : 0;
      if (now != state) {
        ++changes;
        state = now;
      }
    }
    if (changes > 1) throw SplitError("wire " + std::to_string(a + 1) + " crosses the border more than once");
  }
  for (std::size_t j = k + 1; j < w.events().size(); ++j)
    if (w.is_degenerate(j)) throw SplitError("border meets a second degenerate point");
  const auto& corners = geo.corners(k);
  std::size_t cornered = 0;
  for (RegionId r : result.second_part)
    if (std::binary_search(corners.begin(), corners.end(), r)) ++cornered;
  if (cornered != s - 1)
    throw SplitError("second part has " + std::to_string(cornered) + " regions at the point, expected " +
                     std::to_string(s - 1));
  return result;
}

inline SplitResult split_at_degeneracy(const WiringDiagram& w) { return split_at_degeneracy(ArrangementGeometry(w)); }

}  // namespace varchenko
