// Computes the annotated treewidth of the grid perimeter and contrasts it
// with the plain treewidth: the perimeter of the n x n grid only ever
// contributes width 2, however large the grid's own treewidth gets.

#include <iostream>

#include "cmsotw/cmsotw.hpp"

int main() {
  using namespace cmsotw;
  for (int n = 3; n <= 4; ++n) {
    Structure grid = generate_grid(n);
    const auto& perim = grid.colors.at("perimeter");
    int tw = treewidth_exact(grid.g).width;
    int atw = annotated_treewidth(grid.g, perim);
    std::cout << n << "x" << n << " grid: treewidth " << tw
              << ", annotated treewidth of the perimeter " << atw << "\n";
  }
  return 0;
}
