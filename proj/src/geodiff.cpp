#include "osserman/geodiff.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "osserman/conformal.hpp"

namespace oslab::geo {

double PhiPoly::eval(const Vec& x) const {
  double s = 0.0;
  for (const Term& t : terms) {
    double m = t.coeff;
    for (int v = 0; v < dim; ++v)
      for (int p = 0; p < t.powers[v]; ++p) m *= x[v];
    s += m;
  }
  return s;
}

Vec PhiPoly::grad(const Vec& x) const {
  Vec g(dim, 0.0);
  for (const Term& t : terms)
    for (int v = 0; v < dim; ++v) {
      if (t.powers[v] == 0) continue;
      double m = t.coeff * t.powers[v];
      for (int w = 0; w < dim; ++w) {
        int pw = t.powers[w] - (w == v ? 1 : 0);
        for (int p = 0; p < pw; ++p) m *= x[w];
      }
      g[v] += m;
    }
  return g;
}

SymOp PhiPoly::hess(const Vec& x) const {
  Mat h(dim, dim);
  for (const Term& t : terms)
    for (int v = 0; v < dim; ++v) {
      if (t.powers[v] == 0) continue;
      for (int u = 0; u < dim; ++u) {
        std::vector<int> pw = t.powers;
        double m = t.coeff * pw[v];
        --pw[v];
        if (pw[u] == 0) continue;
        m *= pw[u];
        --pw[u];
        for (int w = 0; w < dim; ++w)
          for (int p = 0; p < pw[w]; ++p) m *= x[w];
        h(u, v) += m;
      }
    }
  return SymOp(h);
}

double PhiPoly::laplacian(const Vec& x) const {
  SymOp h = hess(x);
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += h(i, i);
  return s;
}

void Box::require_interior(const Vec& x, double margin) const {
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] < lo[i] + margin || x[i] > hi[i] - margin)
      throw std::invalid_argument("chart: point is not interior to the domain with the FD margin");
}

SymOp MetricChart::metric(const Vec& x) const {
  SymOp m = g(x);
  if (!cholesky(m)) throw std::runtime_error("chart '" + name + "': singular metric at stencil point");
  return m;
}

MetricChart euclidean(int n) {
  MetricChart c;
  c.name = "euclidean";
  c.dim = n;
  c.g = [n](const Vec&) { return SymOp::identity(n); };
  c.dg = [n](const Vec&) { return std::vector<Mat>(n, Mat(n, n)); };
  c.domain = {Vec(n, -1.0), Vec(n, 1.0)};
  return c;
}

MetricChart sphere_stereographic(int n) {
  MetricChart c;
  c.name = "sphere";
  c.dim = n;
  c.g = [n](const Vec& x) {
    double r2 = dot(x, x);
    double f = 4.0 / ((1.0 + r2) * (1.0 + r2));
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = f;
    return SymOp(m);
  };
  c.domain = {Vec(n, -1.0), Vec(n, 1.0)};
  return c;
}

namespace {

// real metric from the Hermitian h_{i jbar}: coordinates x[2i], x[2i+1]
// are Re z_i, Im z_i
SymOp real_from_hermitian(const std::vector<std::vector<std::complex<double>>>& h, int m) {
  int n = 2 * m;
  Mat g(n, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double re = h[i][j].real(), im = h[i][j].imag();
      g(2 * i, 2 * j) = re;
      g(2 * i + 1, 2 * j + 1) = re;
      g(2 * i, 2 * j + 1) = im;
      g(2 * i + 1, 2 * j) = -im;
    }
  return SymOp(g);
}

std::vector<std::complex<double>> complex_coords(const Vec& x, int m) {
  std::vector<std::complex<double>> z(m);
  for (int i = 0; i < m; ++i) z[i] = {x[2 * i], x[2 * i + 1]};
  return z;
}

}  // namespace

MetricChart fubini_study(int m) {
  MetricChart c;
  c.name = "cp" + std::to_string(m);
  c.dim = 2 * m;
  c.g = [m](const Vec& x) {
    auto z = complex_coords(x, m);
    double r2 = 0.0;
    for (auto& zi : z) r2 += std::norm(zi);
    double d = 1.0 + r2;
    std::vector<std::vector<std::complex<double>>> h(m, std::vector<std::complex<double>>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        std::complex<double> v = -std::conj(z[i]) * z[j];
        if (i == j) v += d;
        h[i][j] = v / (d * d);
      }
    return real_from_hermitian(h, m);
  };
  c.domain = {Vec(2 * m, -1.0), Vec(2 * m, 1.0)};
  return c;
}

MetricChart complex_hyperbolic(int m) {
  MetricChart c;
  c.name = "ch" + std::to_string(m);
  c.dim = 2 * m;
  c.g = [m](const Vec& x) {
    auto z = complex_coords(x, m);
    double r2 = 0.0;
    for (auto& zi : z) r2 += std::norm(zi);
    if (r2 >= 0.9) throw std::runtime_error("complex_hyperbolic: outside the unit ball chart");
    double d = 1.0 - r2;
    std::vector<std::vector<std::complex<double>>> h(m, std::vector<std::complex<double>>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        std::complex<double> v = std::conj(z[i]) * z[j];
        if (i == j) v += d;
        h[i][j] = v / (d * d);
      }
    return real_from_hermitian(h, m);
  };
  c.domain = {Vec(2 * m, -0.3), Vec(2 * m, 0.3)};
  return c;
}

MetricChart conformally_flat(const PhiPoly& phi, int n) {
  if (phi.dim != n) throw std::invalid_argument("conformally_flat: phi dimension mismatch");
  MetricChart c;
  c.name = "conformally_flat";
  c.dim = n;
  PhiPoly p = phi;
  c.g = [p, n](const Vec& x) {
    double f = std::exp(2.0 * p.eval(x));
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = f;
    return SymOp(m);
  };
  c.dg = [p, n](const Vec& x) {
    double f = std::exp(2.0 * p.eval(x));
    Vec gr = p.grad(x);
    std::vector<Mat> d(n, Mat(n, n));
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i) d[l](i, i) = 2.0 * gr[l] * f;
    return d;
  };
  c.domain = {Vec(n, -1.0), Vec(n, 1.0)};
  return c;
}

namespace {

std::vector<Mat> metric_derivs(const MetricChart& chart, const Vec& x, const FDConfig& cfg) {
  int n = chart.dim;
  if (chart.dg) return chart.dg(x);
  auto central = [&](double h) {
    std::vector<Mat> d(n);
    for (int l = 0; l < n; ++l) {
      Vec xp = x, xm = x;
      xp[l] += h;
      xm[l] -= h;
      d[l] = (1.0 / (2.0 * h)) * (chart.metric(xp).mat() - chart.metric(xm).mat());
    }
    return d;
  };
  std::vector<Mat> d = central(cfg.h);
  if (cfg.richardson) {
    std::vector<Mat> d2 = central(cfg.h / 2.0);
    for (int l = 0; l < n; ++l) d[l] = (1.0 / 3.0) * (4.0 * d2[l] - d[l]);
  }
  return d;
}

}  // namespace

std::vector<double> christoffel(const MetricChart& chart, const Vec& x, const FDConfig& cfg) {
  int n = chart.dim;
  chart.domain.require_interior(x, 2.0 * cfg.h);
  SymOp g = chart.metric(x);
  Mat ginv = inverse_spd(g);
  std::vector<Mat> dg = metric_derivs(chart, x, cfg);

  std::vector<double> gamma(static_cast<size_t>(n) * n * n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        double v = 0.5 * s;
        gamma[(static_cast<size_t>(k) * n + i) * n + j] = v;
        gamma[(static_cast<size_t>(k) * n + j) * n + i] = v;
      }
  return gamma;
}

namespace {

// lowered curvature components in coordinates, sign convention anchored so
// that the unit sphere chart reproduces the lambda0 = +1 constant tensor
std::vector<double> riemann_coord(const MetricChart& chart, const Vec& x, const FDConfig& cfg) {
  int n = chart.dim;
  chart.domain.require_interior(x, 3.0 * cfg.h);
  auto idx3 = [n](int k, int i, int j) { return (static_cast<size_t>(k) * n + i) * n + j; };

  std::vector<double> gamma = christoffel(chart, x, cfg);
  // dgamma[m] = partial_m Gamma
  std::vector<std::vector<double>> dgamma(n);
  auto gamma_at = [&](const Vec& y) { return christoffel(chart, y, cfg); };
  for (int m = 0; m < n; ++m) {
    Vec xp = x, xm = x;
    xp[m] += cfg.h;
    xm[m] -= cfg.h;
    std::vector<double> gp = gamma_at(xp), gm = gamma_at(xm);
    dgamma[m].resize(gp.size());
    for (size_t t = 0; t < gp.size(); ++t) dgamma[m][t] = (gp[t] - gm[t]) / (2.0 * cfg.h);
    if (cfg.richardson) {
      Vec xp2 = x, xm2 = x;
      xp2[m] += cfg.h / 2.0;
      xm2[m] -= cfg.h / 2.0;
      std::vector<double> gp2 = gamma_at(xp2), gm2 = gamma_at(xm2);
      for (size_t t = 0; t < gp.size(); ++t) {
        double fine = (gp2[t] - gm2[t]) / cfg.h;
        dgamma[m][t] = (4.0 * fine - dgamma[m][t]) / 3.0;
      }
    }
  }

  SymOp g = chart.metric(x);
  std::vector<double> r(static_cast<size_t>(n) * n * n * n, 0.0);
  auto idx4 = [n](int i, int j, int k, int l) {
    return ((static_cast<size_t>(i) * n + j) * n + k) * n + l;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        for (int m = 0; m < n; ++m) {
          double up = dgamma[i][idx3(m, j, k)] - dgamma[j][idx3(m, i, k)];
          for (int p = 0; p < n; ++p)
            up += gamma[idx3(m, i, p)] * gamma[idx3(p, j, k)] -
                  gamma[idx3(m, j, p)] * gamma[idx3(p, i, k)];
          for (int l = 0; l < n; ++l) r[idx4(i, j, k, l)] -= g(l, m) * up;
        }
      }
  return r;
}

// g-orthonormal frame by Gram-Schmidt on the coordinate basis in index order
Mat orthonormal_frame(const SymOp& g) {
  int n = g.dim();
  Mat b(n, n);
  std::vector<Vec> frame;
  for (int a = 0; a < n; ++a) {
    Vec v(n, 0.0);
    v[a] = 1.0;
    for (const Vec& f : frame) {
      double c = dot(g.apply(f), v);
      for (int i = 0; i < n; ++i) v[i] -= c * f[i];
    }
    double nv = std::sqrt(dot(g.apply(v), v));
    if (nv < 1e-12) throw std::runtime_error("orthonormal_frame: degenerate frame");
    for (int i = 0; i < n; ++i) v[i] /= nv;
    frame.push_back(v);
    b.set_column(a, v);
  }
  return b;
}

// staged change of basis for a flattened rank-d tensor, all indices lowered
std::vector<double> transform_tensor(const std::vector<double>& t, int rank, int n, const Mat& b) {
  std::vector<double> cur = t;
  size_t total = cur.size();
  for (int axis = 0; axis < rank; ++axis) {
    std::vector<double> next(total, 0.0);
    size_t stride = 1;
    for (int a = rank - 1; a > axis; --a) stride *= n;
    size_t outer = total / (stride * n);
    for (size_t o = 0; o < outer; ++o)
      for (size_t s = 0; s < stride; ++s) {
        const size_t base = o * stride * n + s;
        for (int newi = 0; newi < n; ++newi) {
          double acc = 0.0;
          for (int oldi = 0; oldi < n; ++oldi)
            acc += b(oldi, newi) * cur[base + stride * oldi];
          next[base + stride * newi] = acc;
        }
      }
    cur.swap(next);
  }
  return cur;
}

}  // namespace

RiemannResult riemann_at(const MetricChart& chart, const Vec& x, const FDConfig& cfg) {
  int n = chart.dim;
  std::vector<double> rc = riemann_coord(chart, x, cfg);
  Mat frame = orthonormal_frame(chart.metric(x));
  std::vector<double> rf = transform_tensor(rc, 4, n, frame);

  RiemannResult out;
  out.frame = frame;
  out.r = CurvTensor(n);
  out.r.data() = rf;
  out.raw_residuals = out.r.symmetry_residuals();
  out.r.symmetrize();
  return out;
}

ChartScanReport osserman_scan(const MetricChart& chart, const std::vector<Vec>& points,
                              int directions_per_point, const FDConfig& cfg,
                              const TolerancePolicy& policy, uint64_t seed) {
  ChartScanReport rep;
  rep.chart = chart.name;
  int samples = std::max(chart.dim, directions_per_point);

  for (size_t i = 0; i < points.size(); ++i) {
    ScanPoint p;
    p.x = points[i];
    RiemannResult rr = riemann_at(chart, points[i], cfg);
    p.symmetry_residual = rr.raw_residuals.max();
    p.r_report = curv::osserman_check(rr.r, samples, policy, seed + i);
    if (chart.dim >= 4) {
      CurvTensor w = curv::weyl(rr.r);
      p.weyl_norm = std::sqrt(w.frobenius_sq());
      p.weyl_report = curv::osserman_check(w, samples, policy, seed + i);
    }
    rep.points.push_back(std::move(p));
  }

  for (size_t i = 0; i < rep.points.size(); ++i)
    for (size_t j = i + 1; j < rep.points.size(); ++j)
      rep.cross_point_deviation =
          std::max(rep.cross_point_deviation, rep.points[i].r_report.reference_spectrum.deviation(
                                                  rep.points[j].r_report.reference_spectrum));
  return rep;
}

double bianchi2_residual(const MetricChart& chart, const Vec& x, const FDConfig& cfg) {
  int n = chart.dim;
  chart.domain.require_interior(x, 4.0 * cfg.h);
  auto idx3 = [n](int k, int i, int j) { return (static_cast<size_t>(k) * n + i) * n + j; };
  auto idx4 = [n](int i, int j, int k, int l) {
    return ((static_cast<size_t>(i) * n + j) * n + k) * n + l;
  };

  std::vector<double> gamma = christoffel(chart, x, cfg);
  std::vector<double> r0 = riemann_coord(chart, x, cfg);

  // nabla_m R_{ijkl} = d_m R - Gamma corrections on all four slots
  std::vector<double> nr(static_cast<size_t>(n) * n * n * n * n, 0.0);
  for (int m = 0; m < n; ++m) {
    Vec xp = x, xm = x;
    xp[m] += cfg.h;
    xm[m] -= cfg.h;
    std::vector<double> rp = riemann_coord(chart, xp, cfg);
    std::vector<double> rm = riemann_coord(chart, xm, cfg);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double d = (rp[idx4(i, j, k, l)] - rm[idx4(i, j, k, l)]) / (2.0 * cfg.h);
            for (int p = 0; p < n; ++p) {
              d -= gamma[idx3(p, m, i)] * r0[idx4(p, j, k, l)];
              d -= gamma[idx3(p, m, j)] * r0[idx4(i, p, k, l)];
              d -= gamma[idx3(p, m, k)] * r0[idx4(i, j, p, l)];
              d -= gamma[idx3(p, m, l)] * r0[idx4(i, j, k, p)];
            }
            nr[(((static_cast<size_t>(m) * n + i) * n + j) * n + k) * n + l] = d;
          }
  }

  Mat frame = orthonormal_frame(chart.metric(x));
  std::vector<double> nf = transform_tensor(nr, 5, n, frame);
  auto idx5 = [n](int m, int i, int j, int k, int l) {
    return (((static_cast<size_t>(m) * n + i) * n + j) * n + k) * n + l;
  };

  double worst = 0.0;
  for (int u = 0; u < n; ++u)
    for (int a = 0; a < n; ++a)
      for (int y = 0; y < n; ++y) {
        if (u == a || a == y || u == y) continue;
        double sq = 0.0;
        for (int e = 0; e < n; ++e) {
          double w = nf[idx5(u, a, y, y, e)] + nf[idx5(y, u, a, y, e)] + nf[idx5(a, y, u, y, e)];
          sq += w * w;
        }
        worst = std::max(worst, std::sqrt(sq));
      }
  return worst;
}

double laplacian_identity_residual(const PhiPoly& phi, const Vec& x, const FDConfig& cfg,
                                   bool analytic) {
  int n = phi.dim;
  double c = 0.5 * (n - 2.0);
  auto u = [&](const Vec& y) { return std::exp(c * phi.eval(y)); };

  Vec grad = phi.grad(x);
  SymOp hess = phi.hess(x);
  SymOp k = conf::k_from_phi(grad, hess);
  double f_coef = 0.5 * (n - 2.0) * k.trace();

  double lap_u;
  if (analytic) {
    lap_u = u(x) * (c * phi.laplacian(x) + c * c * dot(grad, grad));
  } else {
    auto fd = [&](double h) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        s += (u(xp) - 2.0 * u(x) + u(xm)) / (h * h);
      }
      return s;
    };
    lap_u = fd(cfg.h);
    if (cfg.richardson) lap_u = (4.0 * fd(cfg.h / 2.0) - lap_u) / 3.0;
  }
  return std::fabs(lap_u - f_coef * u(x));
}

std::vector<Vec> default_points(const MetricChart& chart, int count, uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> pts;
  for (int t = 0; t < count; ++t) {
    Vec x(chart.dim);
    for (int i = 0; i < chart.dim; ++i) {
      double lo = chart.domain.lo[i], hi = chart.domain.hi[i];
      double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      x[i] = mid + 0.6 * half * (2.0 * rng.uniform() - 1.0);
    }
    pts.push_back(x);
  }
  return pts;
}

}  // namespace oslab::geo
