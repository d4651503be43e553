// Reduces the two-triple-point arrangement and prints its blocks and the
// verification report.

#include <iostream>

#include "varchenko/varchenko.hpp"

int main() {
  using namespace varchenko;

  WiringDiagram w = parse_wiring_diagram(
      "wires 5\n"
      "event 1 3\n"
      "event 3 3\n");

  // Wire 1 is shared by both points. These weights label the lines so the
  // blocks come out in (x1,x2,x3) and (x4,x2,x5), and the cones pick which
  // regions form each leftover block.
  WeightAssignment weights({VariableId{2}, VariableId{3}, VariableId{1}, VariableId{5}, VariableId{4}});
  NumberingOptions options;
  options.cones = {{0, ConeChoice{2, true}}, {1, ConeChoice{2, true}}};

  Reduction red = reduce(w, weights, options);
  std::cout << format_blocks(red.form, red.geometry);
  std::cout << verify_block_form(red.form, red.matrix, red.geometry.poset(), red.weights).to_text();
}
