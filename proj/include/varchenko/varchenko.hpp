#pragma once

#include "varchenko/elimination.hpp"
#include "varchenko/geometry.hpp"
#include "varchenko/matrix.hpp"
#include "varchenko/numbering.hpp"
#include "varchenko/poly.hpp"
#include "varchenko/splitting.hpp"
#include "varchenko/topes.hpp"
#include "varchenko/varchenko_matrix.hpp"
#include "varchenko/verification.hpp"
#include "varchenko/wiring_diagram.hpp"

namespace varchenko {

// Everything the reduction of one diagram produces.
struct Reduction {
  ArrangementGeometry geometry;
  WeightAssignment weights;
  VarchenkoMatrix matrix;
  BlockDiagonalForm form;
};

inline Reduction reduce(const WiringDiagram& w, const WeightAssignment& weights, const NumberingOptions& options = {},
                        const EliminationOptions& elimination = {}) {
  ArrangementGeometry geo(w);
  if (weights.size() != w.wires()) throw std::invalid_argument("need one weight per wire");
  VarchenkoMatrix v = varchenko_matrix(geo.topes(), weights);
  Numbering numbering = good_numbering(geo, weights, options);
  BlockDiagonalForm form = eliminate(v, geo, numbering, weights, elimination);
  return Reduction{std::move(geo), weights, std::move(v), std::move(form)};
}

inline Reduction reduce(const WiringDiagram& w) { return reduce(w, WeightAssignment::identity(w.wires())); }

}  // namespace varchenko
