// Runs the acceptance suite and prints one pass/fail line per criterion.
// Exit code 0 iff every criterion passes.

#include "core/acceptance.hpp"

#include <iostream>

int main() {
  canonpair::ToleranceConfig tol;
  bool all = true;
  for (const auto& r : canonpair::run_acceptance(tol)) {
    all = all && r.pass;
    std::cout << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL")
              << " - " << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
  }
  return all ? 0 : 1;
}
