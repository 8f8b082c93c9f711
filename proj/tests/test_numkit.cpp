#include "osserman/numkit.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"

using namespace oslab;

namespace {

// Characteristic polynomial oracle: det(M - t I) by recursive cofactor
// expansion, independent of the Jacobi solver.
double det_cofactor(const Mat& m) {
  int n = m.rows();
  if (n == 1) return m(0, 0);
  double det = 0.0;
  for (int j = 0; j < n; ++j) {
    if (m(0, j) == 0.0) continue;
    Mat minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    det += ((j % 2) ? -1.0 : 1.0) * m(0, j) * det_cofactor(minor);
  }
  return det;
}

double charpoly_at(const Mat& m, double t) {
  Mat shifted = m;
  for (int i = 0; i < m.rows(); ++i) shifted(i, i) -= t;
  return det_cofactor(shifted);
}

// Roots of the characteristic polynomial by sign-change bisection on a fine
// grid inside the Gershgorin bound.
Vec charpoly_roots(const Mat& m, int expected) {
  double bound = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < m.cols(); ++j) row += std::fabs(m(i, j));
    bound = std::max(bound, row);
  }
  bound += 1.0;
  const int grid = 200000;
  Vec roots;
  double prev_t = -bound;
  double prev_v = charpoly_at(m, prev_t);
  for (int k = 1; k <= grid; ++k) {
    double t = -bound + 2.0 * bound * k / grid;
    double v = charpoly_at(m, t);
    if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
      double lo = prev_t, hi = t, flo = prev_v;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = charpoly_at(m, mid);
        if ((flo < 0.0) == (fm < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_v = v;
  }
  REQUIRE(static_cast<int>(roots.size()) == expected);
  return roots;
}

}  // namespace

TEST_CASE("sym_eig: identity and diagonal inputs") {
  TolerancePolicy pol;
  Spectrum s = sym_eig(SymOp::identity(4), pol);
  REQUIRE(s.clusters.size() == 1);
  CHECK(s.clusters[0].value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.clusters[0].multiplicity == 4);

  Spectrum d = sym_eig(SymOp::diag({0.0, 1.0, 1.0, 4.0}), pol);
  REQUIRE(d.clusters.size() == 3);
  CHECK(d.clusters[0].value == doctest::Approx(0.0));
  CHECK(d.clusters[0].multiplicity == 1);
  CHECK(d.clusters[1].value == doctest::Approx(1.0));
  CHECK(d.clusters[1].multiplicity == 2);
  CHECK(d.clusters[2].value == doctest::Approx(4.0));
  CHECK(d.clusters[2].multiplicity == 1);
}

TEST_CASE("sym_eig: random 6x6 matches characteristic polynomial roots") {
  Rng rng(177);
  Mat raw(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) raw(i, j) = rng.uniform(-2.0, 2.0);
  SymOp m(raw);

  EigResult e = eig_decompose(m);
  Vec oracle = charpoly_roots(m.mat(), 6);
  std::sort(oracle.begin(), oracle.end());
  for (int k = 0; k < 6; ++k) CHECK(std::fabs(e.values[k] - oracle[k]) < 1e-9);

  // reconstruction residual
  Mat rec(6, 6);
  for (int k = 0; k < 6; ++k) {
    Vec vk = e.vectors.column(k);
    rec += e.values[k] * outer(vk, vk);
  }
  CHECK(frobenius(rec - m.mat()) <= 1e-12 * frobenius(m.mat()) * 10);
}

TEST_CASE("sym_eig: eigenvalue sum equals trace, values real and sorted") {
  Rng rng(9);
  for (int n : {2, 5, 11, 17}) {
    Mat raw(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) raw(i, j) = rng.normal();
    SymOp m(raw);
    EigResult e = eig_decompose(m);
    double sum = 0.0;
    for (double v : e.values) sum += v;
    CHECK(std::fabs(sum - m.trace()) <= 1e-10 * std::max(1.0, std::fabs(m.trace())));
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
  }
}

TEST_CASE("wedge: formula, antisymmetry, skewness") {
  Vec e1{1, 0, 0, 0}, e2{0, 1, 0, 0};
  SkewOp w = wedge(e1, e2);
  Vec img = w.apply(e1);
  CHECK(norm(sub(img, e2)) < 1e-15);

  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Vec x = rng.gaussian_vec(6), y = rng.gaussian_vec(6);
    SkewOp a = wedge(x, y), b = wedge(y, x);
    CHECK(max_abs(a.mat() + b.mat()) < 1e-14 * std::max(1.0, max_abs(a.mat())));
    Vec u = rng.gaussian_vec(6), v = rng.gaussian_vec(6);
    CHECK(std::fabs(dot(a.apply(u), v) + dot(u, a.apply(v))) < 1e-12);
  }
  SkewOp self = wedge(e1, e1);
  CHECK(max_abs(self.mat()) == 0.0);
}

TEST_CASE("cholesky detects PD and inverse is correct") {
  Rng rng(31);
  Mat b(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) b(i, j) = rng.normal();
  SymOp spd(b * b.transpose() + 5.0 * Mat::identity(5));
  auto l = cholesky(spd);
  REQUIRE(l.has_value());
  Mat inv = inverse_spd(spd);
  CHECK(frobenius(inv * spd.mat() - Mat::identity(5)) < 1e-10);

  SymOp indef = SymOp::diag({1.0, -1.0, 2.0});
  CHECK(!cholesky(indef).has_value());
}

TEST_CASE("nullspace recovers the kernel of a rank-deficient map") {
  // A projects out the first two coordinates of R^5
  Mat a(3, 5);
  a(0, 2) = 1;
  a(1, 3) = 2;
  a(2, 4) = -1;
  auto basis = nullspace(a);
  REQUIRE(basis.size() == 2);
  for (const Vec& v : basis) CHECK(norm(a.apply(v)) < 1e-12);
}

TEST_CASE("subspace distance is basis independent") {
  std::vector<Vec> b1{{1, 0, 0, 0}, {0, 1, 0, 0}};
  std::vector<Vec> b2{{1, 1, 0, 0}, {2, -1, 0, 0}};
  CHECK(subspace_distance(b1, b2) < 1e-12);
  std::vector<Vec> b3{{0, 0, 1, 0}, {0, 1, 0, 0}};
  CHECK(subspace_distance(b1, b3) > 1.0);
}

TEST_CASE("rng orthogonal matrices are orthogonal and deterministic") {
  Rng r1(42), r2(42);
  Mat q1 = r1.orthogonal(6), q2 = r2.orthogonal(6);
  CHECK(frobenius(q1 - q2) == 0.0);
  CHECK(frobenius(q1.transpose() * q1 - Mat::identity(6)) < 1e-12);
}

TEST_CASE("parallel_for is deterministic across thread counts") {
  Vec out1(257), out4(257);
  set_thread_cap(1);
  parallel_for(257, [&](int i) { out1[i] = std::sin(0.1 * i) * i; });
  set_thread_cap(4);
  parallel_for(257, [&](int i) { out4[i] = std::sin(0.1 * i) * i; });
  set_thread_cap(-1);
  CHECK(out1 == out4);
}
