#include "osserman/jsonio.hpp"

#include <cmath>

#include "doctest.h"

using namespace oslab;

TEST_CASE("clifford system JSON round-trips bit-exactly") {
  cliff::CliffordSystem sys = cliff::generate(8, 3, 1.0 / 3.0, {0.1, -0.7, 2.0 / 7.0}, 99);
  std::string text = io::dump(io::system_to_json(sys));
  cliff::CliffordSystem back = io::system_from_json(io::parse(text));

  CHECK(back.n == sys.n);
  CHECK(back.nu == sys.nu);
  CHECK(back.lambda0 == sys.lambda0);
  CHECK(back.eta == sys.eta);
  for (int i = 0; i < sys.nu; ++i)
    CHECK(back.J[i].mat().data() == sys.J[i].mat().data());

  // and the serialization itself is stable
  CHECK(io::dump(io::system_to_json(back)) == text);
}

TEST_CASE("curvature tensor JSON round-trips bit-exactly with its system") {
  cliff::CliffordSystem sys = cliff::generate(6, 1, 0.3, {1.0 / 3.0}, 7);
  curv::CurvTensor r = curv::from_clifford(sys);
  std::string text = io::dump(io::tensor_to_json(r, &sys));
  io::TensorFile back = io::tensor_from_json(io::parse(text));

  REQUIRE(back.sys.has_value());
  CHECK(back.r.data() == r.data());
  CHECK(io::dump(io::tensor_to_json(back.r, &*back.sys)) == text);
}

TEST_CASE("schema violations raise descriptive errors") {
  CHECK_THROWS_WITH_AS(io::parse("not json"), doctest::Contains("not valid JSON"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(io::system_from_json(io::parse("{\"n\": 4}")),
                       doctest::Contains("missing key"), std::runtime_error);
  CHECK_THROWS_WITH_AS(io::tensor_from_json(io::parse("{\"n\": 4, \"R\": [1, 2]}")),
                       doctest::Contains("n^4"), std::runtime_error);
}
