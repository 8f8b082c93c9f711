#include "osserman/clifford.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "osserman/curvature.hpp"
#include "osserman/octonion.hpp"

using namespace oslab;
using namespace oslab::cliff;

namespace {

// independent route to the Radon-Hurwitz bound: the irreducible Clifford
// module dimensions follow the mod-8 pattern 2,4,4,8,8,8,8,16 with period
// factor 16; the bound is the largest nu whose module dimension divides n
int radon_oracle(int n) {
  auto module_dim = [](int nu) {
    static const long base[8] = {2, 4, 4, 8, 8, 8, 8, 16};
    long d = base[(nu - 1) % 8];
    for (int k = 0; k < (nu - 1) / 8; ++k) d *= 16;
    return d;
  };
  int best = 0;
  for (int nu = 1; nu <= 32; ++nu)
    if (module_dim(nu) <= n && n % module_dim(nu) == 0) best = nu;
  return best;
}

}  // namespace

TEST_CASE("radon_bound: pinned values and the module-dimension oracle") {
  CHECK(radon_bound(8) == 7);
  CHECK(radon_bound(16) == 8);
  CHECK(radon_bound(1) == 0);
  CHECK(radon_bound(6) == 1);
  CHECK(radon_bound(2) == 1);
  CHECK(radon_bound(4) == 3);
  CHECK(radon_bound(24) == 7);
  CHECK(radon_bound(32) == 9);
  for (int n = 1; n <= 256; ++n) CHECK(radon_bound(n) == radon_oracle(n));
}

TEST_CASE("min_module_dim: inverse of the bound") {
  CHECK(min_module_dim(1) == 2);
  CHECK(min_module_dim(7) == 8);
  CHECK(min_module_dim(8) == 16);
  CHECK(min_module_dim(9) == 32);
  for (int nu = 1; nu <= 9; ++nu) {
    int d = min_module_dim(nu);
    CHECK(radon_bound(d) >= nu);
    for (int smaller = 1; smaller < d; ++smaller) CHECK(radon_bound(smaller) < nu);
  }
}

TEST_CASE("generate + validate across the admissible grid") {
  for (int n : {2, 4, 6, 8, 12, 16, 24, 32}) {
    if (n > kMaxDim) continue;
    int bound = radon_bound(n);
    for (int nu = 0; nu <= bound; ++nu) {
      if (nu > 0 && n % min_module_dim(nu) != 0) continue;
      std::vector<double> eta(nu, 1.0);
      for (int i = 0; i < nu; ++i) eta[i] = 0.5 + 0.25 * i;
      CliffordSystem sys = generate(n, nu, 1.0, eta, 321 + n + nu);
      ValidationReport rep = validate(sys);
      CHECK(rep.max_residual() < 1e-12);
      CHECK(rep.pass(1e-10));
    }
  }
}

TEST_CASE("generate: n=2 gives the rotation by pi/2 up to conjugation") {
  CliffordSystem sys = generate(2, 1, 1.0, {1.0}, 0);
  Mat expected(2, 2);
  expected(0, 1) = -1.0;
  expected(1, 0) = 1.0;
  CHECK(frobenius(sys.J[0].mat() - expected) < 1e-15);
}

TEST_CASE("generate: preconditions are enforced") {
  CHECK_THROWS(generate(8, 8, 1.0, std::vector<double>(8, 1.0), 1));   // Hurwitz obstruction
  CHECK_THROWS(generate(12, 4, 1.0, std::vector<double>(4, 1.0), 1));  // 8 does not divide 12
  CHECK_THROWS(generate(4, 1, 1.0, {0.0}, 1));                         // eta must be nonzero
}

TEST_CASE("validate flags a scaled generator") {
  CliffordSystem sys = generate(6, 1, 1.0, {1.0}, 5);
  CliffordSystem broken = sys;
  Mat scaled_j = 1.01 * sys.J[0].mat();
  broken.J[0] = SkewOp(scaled_j);
  ValidationReport rep = validate(broken);
  CHECK(rep.orthogonality_residual > 1e-2);
  CHECK(!rep.pass(1e-10));
}

TEST_CASE("validate: nu = 0 passes vacuously") {
  CliffordSystem sys = generate(4, 0, 2.0, {}, 9);
  CHECK(validate(sys).pass(1e-10));
}

TEST_CASE("generate(8, 7) in the canonical frame is the octonion action") {
  CliffordSystem sys = generate(8, 7, 1.0, std::vector<double>(7, 1.0), 0);
  auto gens = oslab::oct::octonion_generators();
  for (int i = 0; i < 7; ++i) CHECK(frobenius(sys.J[i].mat() - gens[i].mat()) == 0.0);
}

TEST_CASE("octonionic systems on R^8 and the classification dichotomy") {
  // quaternionic block system: J1 J2 = +-J3
  CliffordSystem quat = generate(8, 3, 1.0, {1.0, 1.0, 1.0}, 0);
  R8Classification cq = classify_r8(quat);
  CHECK(cq.cls == R8Class::Cliff3Special);
  CHECK(std::abs(cq.sign) == 1);

  // first three octonion right multiplications: J1 J2 != +-J3
  CliffordSystem octo = octonionic_system(3, 1.0, {1.0, 1.0, 1.0}, 0);
  R8Classification co = classify_r8(octo);
  CHECK(co.cls == R8Class::Extendable);
  CHECK(co.j1j2_vs_j3 > 0.5);

  CliffordSystem full = octonionic_system(7, 1.0, std::vector<double>(7, 1.0), 0);
  CHECK(classify_r8(full).cls == R8Class::Extendable);
}

TEST_CASE("extend_to_seven: curvature tensor is preserved and xi independent") {
  using curv::CurvTensor;
  using curv::from_clifford;

  // the plain case: one octonionic structure, lambda0 = 0, eta = 1, xi = 1
  {
    CliffordSystem one = octonionic_system(1, 0.0, {1.0}, 0);
    CliffordSystem ext = extend_to_seven(one, 1.0, 11);
    CHECK(ext.lambda0 == -3.0);
    CHECK(ext.eta[0] == 2.0);
    CHECK((from_clifford(ext) - from_clifford(one)).max_abs() < 1e-11);
  }

  for (int nu : {1, 2, 5}) {
    std::vector<double> eta;
    for (int i = 0; i < nu; ++i) eta.push_back(0.75 + 0.5 * i);
    CliffordSystem sys = octonionic_system(nu, 1.25, eta, 42 + nu);
    CurvTensor before = from_clifford(sys);

    for (double xi : {1.0, -0.35, 2.5}) {
      CliffordSystem ext = extend_to_seven(sys, xi, 17);
      CHECK(ext.nu == 7);
      CHECK(validate(ext).pass(1e-9));
      // input generators are kept exactly
      for (int i = 0; i < nu; ++i) CHECK(frobenius(ext.J[i].mat() - sys.J[i].mat()) == 0.0);
      CHECK(ext.lambda0 == doctest::Approx(sys.lambda0 - 3.0 * xi));
      CurvTensor after = from_clifford(ext);
      CHECK((after - before).max_abs() < 1e-11);
    }
  }
}

TEST_CASE("extend_to_seven: trivial and refused cases") {
  CliffordSystem full = octonionic_system(7, 1.0, std::vector<double>(7, 1.0), 3);
  CliffordSystem same = extend_to_seven(full, 0.5, 1);
  CHECK(same.nu == 7);
  for (int i = 0; i < 7; ++i) CHECK(frobenius(same.J[i].mat() - full.J[i].mat()) == 0.0);

  CliffordSystem quat = generate(8, 3, 1.0, {1.0, 1.0, 1.0}, 0);
  CHECK_THROWS(extend_to_seven(quat, 1.0, 1));

  CliffordSystem one = octonionic_system(1, 1.0, {1.0}, 2);
  CHECK_THROWS(extend_to_seven(one, 0.0, 1));    // xi = 0
  CHECK_THROWS(extend_to_seven(one, -1.0, 1));   // xi = -eta_1
}

TEST_CASE("nvsnu_scan: inequality (i) equalities and (ii) exceptions") {
  NvsnuReport rep = nvsnu_scan(64);
  CHECK(rep.violations_i.empty());
  CHECK(rep.violations_iii.empty());
  std::vector<std::pair<int, int>> eq{{6, 1}, {12, 3}, {24, 7}};
  CHECK(rep.equalities_i == eq);
  // the arithmetic exception set for (ii); the Radon-Hurwitz bound gives
  // nu = 9 on R^32, and 32 <= 4*9 - 2, so the pair is (32, 9)
  std::vector<std::pair<int, int>> ex{{24, 7}, {32, 9}};
  CHECK(rep.exceptions_ii == ex);

  NvsnuReport rep512 = nvsnu_scan(512);
  CHECK(rep512.violations_i.empty());
  CHECK(rep512.violations_iii.empty());
  CHECK(rep512.equalities_i == eq);
  CHECK(rep512.exceptions_ii == ex);
}
