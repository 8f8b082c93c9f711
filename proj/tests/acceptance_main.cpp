// Acceptance suite runner for ctest: one line per criterion, exit 0 iff all
// criteria pass.

#include <cstdio>
#include <iostream>

#include "osserman/acceptance.hpp"

int main() {
  oslab::accept::Report rep = oslab::accept::run_all(1);
  std::cout << oslab::accept::summary_lines(rep);
  std::cout.flush();
  return rep.all_pass ? 0 : 1;
}
