#pragma once

// Algebraic curvature tensors over an orthonormal frame: construction from
// Clifford data, Jacobi operators, the Osserman check, and the
// Ricci/Weyl decomposition.

#include <cstdint>
#include <optional>
#include <vector>

#include "osserman/clifford.hpp"
#include "osserman/numkit.hpp"

namespace oslab::curv {

using cliff::CliffordSystem;

// Dense R_{ijkl} = <R(e_i, e_j) e_k, e_l>, row-major over (i, j, k, l).
// The algebraic symmetries are enforced on construction via symmetrize().
class CurvTensor {
 public:
  CurvTensor() = default;
  explicit CurvTensor(int n) : n_(n), r_(static_cast<size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }
  double& at(int i, int j, int k, int l) {
    return r_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }
  double at(int i, int j, int k, int l) const {
    return r_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }
  const std::vector<double>& data() const { return r_; }
  std::vector<double>& data() { return r_; }

  // Projects onto the algebraic curvature tensors: antisymmetrize both
  // pairs, symmetrize pair exchange, subtract the first-Bianchi defect
  // (which is the full alternation on this symmetry class).
  void symmetrize();

  struct SymmetryResiduals {
    double pair_antisymmetry = 0.0;
    double pair_exchange = 0.0;
    double first_bianchi = 0.0;
    double max() const;
  };
  SymmetryResiduals symmetry_residuals() const;

  CurvTensor& operator+=(const CurvTensor& o);
  CurvTensor& operator-=(const CurvTensor& o);
  CurvTensor& operator*=(double s);
  double max_abs() const;
  double frobenius_sq() const;  // plain component sum of squares

 private:
  int n_ = 0;
  std::vector<double> r_;
};

CurvTensor operator+(CurvTensor a, const CurvTensor& b);
CurvTensor operator-(CurvTensor a, const CurvTensor& b);
CurvTensor operator*(double s, CurvTensor a);

// Kulkarni-Nomizu style block <X,Z> s Y + <s X, Z> Y - ... for symmetric s
// against the identity metric; purely Ricci-type.
CurvTensor metric_kn(const SymOp& s);

// eq-style Clifford curvature: lambda0 round part plus the eta_i J-terms.
CurvTensor from_clifford(const CliffordSystem& sys);

// rho-deformed curvature: metric_kn(rho) plus the eta_i J-terms of sys
// (lambda0 of sys is ignored).
CurvTensor from_confcs(const SymOp& rho, const CliffordSystem& sys);

// Rank-one model tensors, lambda0 = eta_i = eps, nu in {1, 3}.
CurvTensor model_tensor(int nu, int eps, int n);
CliffordSystem model_system(int nu, int eps, int n);

SymOp jacobi(const CurvTensor& r, const Vec& x);

struct OssermanReport {
  bool is_osserman = false;
  Spectrum reference_spectrum;
  double max_spectrum_deviation = 0.0;
  int samples_used = 0;
};

// Jacobi spectra over the n basis vectors, ceil(samples/2) seeded sphere
// points, and the J-orbit directions of every sample when a system is
// attached. Sorted eigenvalue lists are compared in sup norm against the
// first sample; the reference is clustered once.
OssermanReport osserman_check(const CurvTensor& r, int samples, const TolerancePolicy& policy,
                              uint64_t seed = 7, const CliffordSystem* sys = nullptr);

SymOp ricci(const CurvTensor& r);
double scalar(const CurvTensor& r);
// Totally trace-free part; requires n >= 4.
CurvTensor weyl(const CurvTensor& r);
// rho = Ric/(n-2) + (lambda0/2 - scal/(2(n-1)(n-2))) id
SymOp recover_rho(const CurvTensor& r, double lambda0);

// Spectrum predicted by the Clifford Jacobi form: {0 x1, lambda0 x(n-1-nu),
// lambda0 + 3 eta_i x1 each}, merged at cluster_tol.
Spectrum predicted_spectrum(const CliffordSystem& sys, double cluster_tol);

}  // namespace oslab::curv
