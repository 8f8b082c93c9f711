#include "osserman/geodiff.hpp"

#include <cmath>

#include "doctest.h"

using namespace oslab;
using namespace oslab::geo;

namespace {

PhiPoly quadratic_phi(int n, uint64_t seed, double scale = 0.3) {
  Rng rng(seed);
  PhiPoly p;
  p.dim = n;
  for (int i = 0; i < n; ++i) {
    PhiPoly::Term lin;
    lin.coeff = scale * rng.uniform(-1.0, 1.0);
    lin.powers.assign(n, 0);
    lin.powers[i] = 1;
    p.terms.push_back(lin);
    for (int j = i; j < n; ++j) {
      PhiPoly::Term quad;
      quad.coeff = scale * rng.uniform(-1.0, 1.0);
      quad.powers.assign(n, 0);
      quad.powers[i] += 1;
      quad.powers[j] += 1;
      p.terms.push_back(quad);
    }
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial derivatives agree with finite differences") {
  PhiPoly p = quadratic_phi(4, 2);
  PhiPoly::Term cubic;
  cubic.coeff = 0.37;
  cubic.powers = {2, 1, 0, 0};
  p.terms.push_back(cubic);

  Rng rng(77);
  Vec x = rng.gaussian_vec(4);
  double h = 1e-5;
  Vec g = p.grad(x);
  SymOp hess = p.hess(x);
  for (int i = 0; i < 4; ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    CHECK(std::fabs((p.eval(xp) - p.eval(xm)) / (2 * h) - g[i]) < 1e-8);
    for (int j = 0; j < 4; ++j) {
      Vec a = x, b = x, c = x, d = x;
      a[i] += h;
      a[j] += h;
      b[i] += h;
      b[j] -= h;
      c[i] -= h;
      c[j] += h;
      d[i] -= h;
      d[j] -= h;
      double fd = (p.eval(a) - p.eval(b) - p.eval(c) + p.eval(d)) / (4 * h * h);
      CHECK(std::fabs(fd - hess(i, j)) < 1e-5);
    }
  }
}

TEST_CASE("christoffel: euclidean zeros, sphere origin, index symmetry") {
  FDConfig cfg;
  MetricChart eu = euclidean(4);
  auto gamma = christoffel(eu, Vec(4, 0.1), cfg);
  for (double v : gamma) CHECK(std::fabs(v) < 1e-12);

  MetricChart sph = sphere_stereographic(3);
  auto gs = christoffel(sph, Vec(3, 0.0), cfg);
  for (double v : gs) CHECK(std::fabs(v) < 1e-12);

  auto gr = christoffel(sph, {0.21, -0.34, 0.12}, cfg);
  int n = 3;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::fabs(gr[(k * n + i) * n + j] - gr[(k * n + j) * n + i]) < 1e-11);

  CHECK_THROWS(christoffel(sph, {0.999, 0.0, 0.0}, cfg));  // margin violation
}

TEST_CASE("riemann_at: euclidean zero and round-sphere oracle") {
  FDConfig cfg;
  MetricChart eu = euclidean(4);
  RiemannResult flat = riemann_at(eu, Vec(4, -0.2), cfg);
  CHECK(flat.r.max_abs() < 1e-9);

  for (int n : {4, 5}) {
    MetricChart sph = sphere_stereographic(n);
    Vec x(n, 0.0);
    for (int i = 0; i < n; ++i) x[i] = 0.05 * (i + 1) * (i % 2 ? -1.0 : 1.0);
    RiemannResult rr = riemann_at(sph, x, cfg);
    curv::CurvTensor unit = curv::from_clifford(cliff::generate(n, 0, 1.0, {}, 0));
    CHECK((rr.r - unit).max_abs() < 1e-5);
    CHECK(rr.raw_residuals.max() < 10.0 * 1e-4);
  }
}

TEST_CASE("riemann_at: Fubini-Study spectrum {0,1,1,4} and hyperbolic dual") {
  FDConfig cfg;
  TolerancePolicy pol;
  pol.cluster_tol = 1e-3;  // FD noise is ~1e-5, well below the cluster gaps

  MetricChart cp2 = fubini_study(2);
  Vec x{0.11, -0.07, 0.05, 0.13};
  RiemannResult rr = riemann_at(cp2, x, cfg);
  curv::OssermanReport rep = curv::osserman_check(rr.r, 20, pol, 3);
  Vec want{0.0, 1.0, 1.0, 4.0};
  Vec got;
  for (const Cluster& c : rep.reference_spectrum.clusters)
    got.insert(got.end(), c.multiplicity, c.value);
  REQUIRE(got.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(std::fabs(got[i] - want[i]) < 1e-4);
  CHECK(rep.max_spectrum_deviation < 1e-4);

  MetricChart ch2 = complex_hyperbolic(2);
  RiemannResult rh = riemann_at(ch2, {0.06, 0.04, -0.09, 0.02}, cfg);
  curv::OssermanReport hrep = curv::osserman_check(rh.r, 20, pol, 3);
  Vec hwant{-4.0, -1.0, -1.0, 0.0};
  Vec hgot;
  for (const Cluster& c : hrep.reference_spectrum.clusters)
    hgot.insert(hgot.end(), c.multiplicity, c.value);
  REQUIRE(hgot.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(std::fabs(hgot[i] - hwant[i]) < 1e-4);

  // real dimension six: CP^3 spectrum {0:1, 1:4, 4:1}
  MetricChart cp3 = fubini_study(3);
  RiemannResult r3 = riemann_at(cp3, {0.08, -0.03, 0.06, 0.02, -0.05, 0.04}, cfg);
  curv::OssermanReport rep3 = curv::osserman_check(r3.r, 20, pol, 3);
  Vec want3{0, 1, 1, 1, 1, 4};
  Vec got3;
  for (const Cluster& c : rep3.reference_spectrum.clusters)
    got3.insert(got3.end(), c.multiplicity, c.value);
  REQUIRE(got3.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(std::fabs(got3[i] - want3[i]) < 1e-4);
}

TEST_CASE("osserman_scan: sphere is conformally flat, CP^2 is homogeneous") {
  FDConfig cfg;
  TolerancePolicy pol;
  pol.cluster_tol = 1e-3;

  MetricChart sph = sphere_stereographic(4);
  auto pts = default_points(sph, 3, 19);
  ChartScanReport srep = osserman_scan(sph, pts, 10, cfg, pol, 23);
  for (const ScanPoint& p : srep.points) CHECK(p.weyl_norm < 1e-5);

  MetricChart cp2 = fubini_study(2);
  auto cpts = default_points(cp2, 5, 29);
  ChartScanReport crep = osserman_scan(cp2, cpts, 20, cfg, pol, 31);
  CHECK(crep.cross_point_deviation < 1e-4);
  for (const ScanPoint& p : crep.points) {
    CHECK(p.r_report.is_osserman);
    CHECK(p.r_report.max_spectrum_deviation < 1e-4);
  }
}

TEST_CASE("conformally deformed flat chart has vanishing Weyl tensor") {
  FDConfig cfg;
  TolerancePolicy pol;
  pol.cluster_tol = 1e-3;
  PhiPoly phi = quadratic_phi(5, 91, 0.25);
  MetricChart cf = conformally_flat(phi, 5);
  auto pts = default_points(cf, 2, 37);
  for (const Vec& x : pts) {
    RiemannResult rr = riemann_at(cf, x, cfg);
    curv::CurvTensor w = curv::weyl(rr.r);
    CHECK(std::sqrt(w.frobenius_sq()) < 1e-4);
  }
}

TEST_CASE("bianchi2: flat chart exact, sphere converges at order >= 1.8") {
  FDConfig cfg;
  MetricChart eu = euclidean(3);
  CHECK(bianchi2_residual(eu, Vec(3, 0.05), cfg) < 1e-12);

  MetricChart sph = sphere_stereographic(4);
  Vec x{0.12, -0.05, 0.08, 0.03};
  FDConfig c1{2e-3, false}, c2{1e-3, false}, c3{5e-4, false};
  double r1 = bianchi2_residual(sph, x, c1);
  double r2 = bianchi2_residual(sph, x, c2);
  double r3 = bianchi2_residual(sph, x, c3);
  double order1 = std::log2(r1 / r2);
  double order2 = std::log2(r2 / r3);
  CHECK(order1 >= 1.8);
  CHECK(order2 >= 1.8);

  MetricChart cp2 = fubini_study(2);
  CHECK(bianchi2_residual(cp2, {0.1, 0.02, -0.07, 0.05}, c2) < 1e-3);

  // conformally deformed flat chart: the covariant-derivative machinery sees
  // a nontrivial connection but the identity still closes at FD accuracy
  PhiPoly phi = quadratic_phi(4, 55, 0.25);
  MetricChart cf = conformally_flat(phi, 4);
  CHECK(bianchi2_residual(cf, {0.1, -0.04, 0.06, 0.02}, c2) < 1e-3);
}

TEST_CASE("laplacian identity residual") {
  // phi = 0: both sides vanish identically
  PhiPoly zero;
  zero.dim = 6;
  FDConfig cfg;
  CHECK(laplacian_identity_residual(zero, Vec(6, 0.1), cfg, true) == 0.0);

  // linear phi, analytic derivatives: both sides reduce to ||a||^2 multiples
  PhiPoly lin;
  lin.dim = 6;
  for (int i = 0; i < 6; ++i) {
    PhiPoly::Term t;
    t.coeff = 0.2 + 0.05 * i;
    t.powers.assign(6, 0);
    t.powers[i] = 1;
    lin.terms.push_back(t);
  }
  CHECK(laplacian_identity_residual(lin, Vec(6, 0.05), cfg, true) < 1e-8);

  // random quadratic, FD derivatives (one Richardson level keeps the
  // truncation error far below the target)
  FDConfig rich{1e-3, true};
  for (int n : {5, 6, 8}) {
    PhiPoly q = quadratic_phi(n, 400 + n, 0.2);
    Rng rng(41);
    Vec x = rng.gaussian_vec(n);
    for (double& v : x) v *= 0.2;
    CHECK(laplacian_identity_residual(q, x, rich, false) < 1e-6);
  }
}
