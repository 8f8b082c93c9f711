#include "osserman/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace oslab::curv {

void CurvTensor::symmetrize() {
  int n = n_;
  CurvTensor t(n);
  // antisymmetrize (i, j) and (k, l), symmetrize pair exchange
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = at(i, j, k, l) - at(j, i, k, l) - at(i, j, l, k) + at(j, i, l, k) +
                     at(k, l, i, j) - at(l, k, i, j) - at(k, l, j, i) + at(l, k, j, i);
          t.at(i, j, k, l) = 0.125 * v;
        }
  // on this symmetry class the cyclic sum b(R) is the projection onto the
  // fully alternating part, so R - b(R) restores first Bianchi
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double b =
              (t.at(i, j, k, l) + t.at(j, k, i, l) + t.at(k, i, j, l)) / 3.0;
          at(i, j, k, l) = t.at(i, j, k, l) - b;
        }
}

double CurvTensor::SymmetryResiduals::max() const {
  return std::max({pair_antisymmetry, pair_exchange, first_bianchi});
}

CurvTensor::SymmetryResiduals CurvTensor::symmetry_residuals() const {
  SymmetryResiduals s;
  int n = n_;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = at(i, j, k, l);
          s.pair_antisymmetry = std::max(
              {s.pair_antisymmetry, std::fabs(v + at(j, i, k, l)), std::fabs(v + at(i, j, l, k))});
          s.pair_exchange = std::max(s.pair_exchange, std::fabs(v - at(k, l, i, j)));
          s.first_bianchi =
              std::max(s.first_bianchi, std::fabs(v + at(j, k, i, l) + at(k, i, j, l)));
        }
  return s;
}

CurvTensor& CurvTensor::operator+=(const CurvTensor& o) {
  for (size_t i = 0; i < r_.size(); ++i) r_[i] += o.r_[i];
  return *this;
}

CurvTensor& CurvTensor::operator-=(const CurvTensor& o) {
  for (size_t i = 0; i < r_.size(); ++i) r_[i] -= o.r_[i];
  return *this;
}

CurvTensor& CurvTensor::operator*=(double s) {
  for (double& v : r_) v *= s;
  return *this;
}

double CurvTensor::max_abs() const {
  double m = 0.0;
  for (double v : r_) m = std::max(m, std::fabs(v));
  return m;
}

double CurvTensor::frobenius_sq() const {
  double s = 0.0;
  for (double v : r_) s += v * v;
  return s;
}

CurvTensor operator+(CurvTensor a, const CurvTensor& b) { return a += b; }
CurvTensor operator-(CurvTensor a, const CurvTensor& b) { return a -= b; }
CurvTensor operator*(double s, CurvTensor a) { return a *= s; }

CurvTensor metric_kn(const SymOp& s) {
  int n = s.dim();
  CurvTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0.0;
          if (i == k) v += s(j, l);
          if (j == l) v += s(i, k);
          if (j == k) v -= s(i, l);
          if (i == l) v -= s(j, k);
          r.at(i, j, k, l) = v;
        }
  return r;
}

namespace {

// adds sum_s eta_s (2 <J_s e_i, e_j> <J_s e_k, e_l> + <J_s e_k, e_j> <J_s e_i, e_l>
//                   - <J_s e_k, e_i> <J_s e_j, e_l>) into r
void add_clifford_terms(CurvTensor& r, const CliffordSystem& sys) {
  int n = r.dim();
  for (int s = 0; s < sys.nu; ++s) {
    const Mat& j = sys.J[s].mat();  // <J e_a, e_b> = j(b, a)
    double eta = sys.eta[s];
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double v = 2.0 * j(jj, i) * j(l, k) + j(jj, k) * j(l, i) - j(i, k) * j(l, jj);
            r.at(i, jj, k, l) += eta * v;
          }
  }
}

}  // namespace

CurvTensor from_clifford(const CliffordSystem& sys) {
  int n = sys.n;
  CurvTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      r.at(i, j, i, j) += sys.lambda0;
      r.at(i, j, j, i) -= sys.lambda0;
    }
  add_clifford_terms(r, sys);
  r.symmetrize();
  return r;
}

CurvTensor from_confcs(const SymOp& rho, const CliffordSystem& sys) {
  if (rho.dim() != sys.n) throw std::invalid_argument("from_confcs: dimension mismatch");
  CurvTensor r = metric_kn(rho);
  add_clifford_terms(r, sys);
  r.symmetrize();
  return r;
}

CliffordSystem model_system(int nu, int eps, int n) {
  if (nu != 1 && nu != 3) throw std::invalid_argument("model_tensor: nu must be 1 or 3");
  if (eps != 1 && eps != -1) throw std::invalid_argument("model_tensor: eps must be +-1");
  if (nu == 1 && n % 2 != 0)
    throw std::invalid_argument("model_tensor: nu = 1 requires even dimension");
  if (nu == 3 && n % 4 != 0)
    throw std::invalid_argument("model_tensor: nu = 3 requires dimension divisible by 4");
  std::vector<double> eta(nu, static_cast<double>(eps));
  return cliff::generate(n, nu, static_cast<double>(eps), eta, 0);
}

CurvTensor model_tensor(int nu, int eps, int n) { return from_clifford(model_system(nu, eps, n)); }

SymOp jacobi(const CurvTensor& r, const Vec& x) {
  int n = r.dim();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("jacobi: dimension mismatch");
  Mat m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        if (x[i] == 0.0) continue;
        for (int k = 0; k < n; ++k) s += x[i] * x[k] * r.at(i, a, k, b);
      }
      m(a, b) = s;
    }
  return SymOp(m);
}

OssermanReport osserman_check(const CurvTensor& r, int samples, const TolerancePolicy& policy,
                              uint64_t seed, const CliffordSystem* sys) {
  policy.check();
  int n = r.dim();
  if (samples < n) throw std::invalid_argument("osserman_check: samples >= n required");

  std::vector<Vec> dirs;
  for (int i = 0; i < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    dirs.push_back(e);
  }
  Rng rng(seed);
  int extra = (samples + 1) / 2;
  for (int t = 0; t < extra; ++t) dirs.push_back(rng.unit_vec(n));
  if (sys != nullptr) {
    size_t base = dirs.size();
    for (size_t d = 0; d < base; ++d)
      for (int i = 0; i < sys->nu; ++i) {
        Vec jx = sys->J[i].apply(dirs[d]);
        double nj = norm(jx);
        if (nj > 1e-12) dirs.push_back(scaled(jx, 1.0 / nj));
      }
  }

  std::vector<Vec> spectra(dirs.size());
  parallel_for(static_cast<int>(dirs.size()), [&](int d) {
    spectra[d] = eig_decompose(jacobi(r, dirs[d]), policy).values;
  });

  OssermanReport rep;
  rep.samples_used = static_cast<int>(dirs.size());
  const Vec& ref = spectra.front();
  for (const Vec& s : spectra)
    for (size_t k = 0; k < s.size(); ++k)
      rep.max_spectrum_deviation = std::max(rep.max_spectrum_deviation, std::fabs(s[k] - ref[k]));
  rep.reference_spectrum = cluster_eigenvalues(ref, policy.cluster_tol);
  rep.is_osserman = rep.max_spectrum_deviation < policy.cluster_tol;
  return rep;
}

SymOp ricci(const CurvTensor& r) {
  int n = r.dim();
  Mat m(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l <= j; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.at(i, j, i, l);
      m(j, l) = s;
      m(l, j) = s;
    }
  return SymOp(m);
}

double scalar(const CurvTensor& r) { return ricci(r).trace(); }

CurvTensor weyl(const CurvTensor& r) {
  int n = r.dim();
  if (n < 4) throw std::invalid_argument("weyl: n >= 4 required");
  SymOp ric = ricci(r);
  double sc = ric.trace();
  Mat s = (1.0 / (n - 2)) * ric.mat();
  double shift = sc / (2.0 * (n - 1) * (n - 2));
  for (int i = 0; i < n; ++i) s(i, i) -= shift;
  CurvTensor w = r - metric_kn(SymOp(s));
  w.symmetrize();
  return w;
}

SymOp recover_rho(const CurvTensor& r, double lambda0) {
  int n = r.dim();
  if (n < 3) throw std::invalid_argument("recover_rho: n >= 3 required");
  SymOp ric = ricci(r);
  double sc = ric.trace();
  Mat rho = (1.0 / (n - 2)) * ric.mat();
  double shift = 0.5 * lambda0 - sc / (2.0 * (n - 1) * (n - 2));
  for (int i = 0; i < n; ++i) rho(i, i) += shift;
  return SymOp(rho);
}

Spectrum predicted_spectrum(const CliffordSystem& sys, double cluster_tol) {
  Vec values;
  values.push_back(0.0);
  for (int k = 0; k < sys.n - 1 - sys.nu; ++k) values.push_back(sys.lambda0);
  for (double e : sys.eta) values.push_back(sys.lambda0 + 3.0 * e);
  std::sort(values.begin(), values.end());
  return cluster_eigenvalues(values, cluster_tol);
}

}  // namespace oslab::curv
