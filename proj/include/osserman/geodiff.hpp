#pragma once

// Numerical differential geometry on coordinate charts: metric ->
// Christoffel -> Riemann -> Weyl by central differences, expressed in a
// Gram-Schmidt orthonormal frame so the algebraic modules can be
// cross-validated on genuine model metrics.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "osserman/curvature.hpp"
#include "osserman/numkit.hpp"

namespace oslab::geo {

using curv::CurvTensor;
using curv::OssermanReport;

// Polynomial in n variables as a monomial list; exact derivatives.
struct PhiPoly {
  struct Term {
    double coeff = 0.0;
    std::vector<int> powers;  // one exponent per variable
  };
  int dim = 0;
  std::vector<Term> terms;

  double eval(const Vec& x) const;
  Vec grad(const Vec& x) const;
  SymOp hess(const Vec& x) const;
  double laplacian(const Vec& x) const;
};

struct Box {
  Vec lo, hi;
  void require_interior(const Vec& x, double margin) const;
};

struct MetricChart {
  std::string name;
  int dim = 0;
  std::function<SymOp(const Vec&)> g;
  // analytic d_l g when the chart provides it; empty -> central differences
  std::function<std::vector<Mat>(const Vec&)> dg;
  Box domain;

  // positive-definiteness is Cholesky-checked on every evaluation
  SymOp metric(const Vec& x) const;
};

MetricChart euclidean(int n);
// round unit sphere, stereographic factor 4/(1+|x|^2)^2
MetricChart sphere_stereographic(int n);
// Fubini-Study on CP^m in inhomogeneous coordinates, real dim 2m,
// holomorphic sectional curvature 4
MetricChart fubini_study(int m);
// complex hyperbolic dual, holomorphic sectional curvature -4
MetricChart complex_hyperbolic(int m);
// g = e^{2 phi} delta with polynomial phi (analytic metric derivatives)
MetricChart conformally_flat(const PhiPoly& phi, int n);

struct FDConfig {
  double h = 1e-3;
  bool richardson = false;
};

// Gamma^k_{ij}, flattened k*n*n + i*n + j
std::vector<double> christoffel(const MetricChart& chart, const Vec& x, const FDConfig& cfg);

struct RiemannResult {
  CurvTensor r;  // in the g(x)-orthonormalized frame, symmetrized
  CurvTensor::SymmetryResiduals raw_residuals;  // before symmetrization
  Mat frame;     // columns = frame vectors in coordinates
};

RiemannResult riemann_at(const MetricChart& chart, const Vec& x, const FDConfig& cfg);

struct ScanPoint {
  Vec x;
  OssermanReport r_report;
  OssermanReport weyl_report;
  double weyl_norm = 0.0;  // sqrt of the component-sum norm
  double symmetry_residual = 0.0;
};

struct ChartScanReport {
  std::string chart;
  std::vector<ScanPoint> points;
  // sup distance between sorted Jacobi reference spectra across points
  double cross_point_deviation = 0.0;
};

ChartScanReport osserman_scan(const MetricChart& chart, const std::vector<Vec>& points,
                              int directions_per_point, const FDConfig& cfg,
                              const TolerancePolicy& policy = {}, uint64_t seed = 11);

// max over frame triples (U, X, Y) of || (nabla_U R)(X,Y)Y + (nabla_Y R)(U,X)Y
// + (nabla_X R)(Y,U)Y ||
double bianchi2_residual(const MetricChart& chart, const Vec& x, const FDConfig& cfg);

// | triangle u - F u | at x for u = e^{(n-2) phi / 2}, F = (n-2)/2 tr K;
// analytic = exact polynomial derivatives on both sides, otherwise the
// Laplacian of u is taken by central differences.
double laplacian_identity_residual(const PhiPoly& phi, const Vec& x, const FDConfig& cfg,
                                   bool analytic);

// deterministic interior sample points for a chart
std::vector<Vec> default_points(const MetricChart& chart, int count, uint64_t seed);

}  // namespace oslab::geo
