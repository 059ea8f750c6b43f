// Runs the two-step model-checking driver on a cycle: irrelevant vertices
// are deleted until the localizer is happy, then the sentence is evaluated
// over the surviving annotated ranges.  The verdict always matches the
// brute-force evaluator on the original graph.

#include <iostream>

#include "cmsotw/cmsotw.hpp"

int main() {
  using namespace cmsotw;
  Structure p = generate_cycle(10);
  Formula phi = parse("(exists x (exists y (and (not (= x y)) (edge x y))))");

  DecideResult res = decide(p, phi, toy_localizer(1), {.max_subset_n = 12});
  std::cout << "verdict: " << (res.verdict ? "true" : "false") << "\n";
  std::cout << "removals: " << res.reduction.trace.size() << ", remaining vertices: "
            << res.reduction.s.n() << "\n";

  bool naive = evaluate(p, phi);
  std::cout << "naive evaluator agrees: " << (naive == res.verdict ? "yes" : "no") << "\n";
  return 0;
}
