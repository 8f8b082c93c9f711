#pragma once

// The verification suite behind `verify all`: every check the lab promises,
// each with a pinned tolerance, run deterministically from one seed.

#include <cstdint>
#include <string>
#include <vector>

#include "osserman/jsonio.hpp"

namespace oslab::accept {

struct Check {
  std::string name;
  bool pass = false;
  io::json detail;
};

struct Criterion {
  std::string name;
  bool pass = true;
  std::vector<Check> checks;
};

struct Report {
  uint64_t seed = 0;
  std::vector<Criterion> criteria;
  bool all_pass = false;
};

Report run_all(uint64_t seed);
io::json report_to_json(const Report& rep);
// one line per criterion: "PASS  name" / "FAIL  name"
std::string summary_lines(const Report& rep);

}  // namespace oslab::accept
