#pragma once

// Dense small-matrix substrate shared by every module: vectors, symmetric and
// skew operators with their structure enforced at construction, a cyclic
// Jacobi eigensolver, and the tolerance policy. Dimensions stay tiny
// (n <= 32), so storage is dense row-major and all loops are straight.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oslab {

inline constexpr int kMaxDim = 32;

using Vec = std::vector<double>;

double dot(const Vec& x, const Vec& y);
double norm(const Vec& x);
Vec scaled(const Vec& x, double s);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
// x <- x - <x,u> u for unit u
void deflate(Vec& x, const Vec& u);

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}
  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  Mat transpose() const;
  Vec apply(const Vec& x) const;
  Vec column(int j) const;
  void set_column(int j, const Vec& c);

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);

double frobenius(const Mat& m);
double max_abs(const Mat& m);
// Kronecker product, row-major blocks: (A (x) B)[i*p+s][j*q+t] = A(i,j) B(s,t).
Mat kron(const Mat& a, const Mat& b);
Mat outer(const Vec& x, const Vec& y);  // x y^T

// Symmetric operator; symmetrized on construction so the invariant is exact.
class SymOp {
 public:
  SymOp() = default;
  explicit SymOp(const Mat& raw);
  static SymOp identity(int n);
  static SymOp zero(int n);
  static SymOp diag(const Vec& d);

  int dim() const { return m_.rows(); }
  const Mat& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  Vec apply(const Vec& x) const { return m_.apply(x); }
  double trace() const;

 private:
  Mat m_;
};

// Skew operator; antisymmetrized on construction.
class SkewOp {
 public:
  SkewOp() = default;
  explicit SkewOp(const Mat& raw);
  static SkewOp zero(int n);

  int dim() const { return m_.rows(); }
  const Mat& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  Vec apply(const Vec& x) const { return m_.apply(x); }

 private:
  Mat m_;
};

// (X ^ Y) Z = <X,Z> Y - <Y,Z> X
SkewOp wedge(const Vec& x, const Vec& y);

struct TolerancePolicy {
  double eig_tol = 1e-12;       // relative, eigendecomposition residual
  double cluster_tol = 1e-7;    // absolute, spectrum clustering gap
  double identity_tol = 1e-10;  // absolute, algebraic identity residuals
  double fd_tol = 1e-4;         // chart-dependent, finite differences

  void check() const;
};

struct Cluster {
  double value = 0.0;
  int multiplicity = 0;
};

struct Spectrum {
  std::vector<Cluster> clusters;
  double cluster_tol = 0.0;

  int dimension() const;
  // sup-norm distance between the flattened sorted eigenvalue lists;
  // infinity when the dimensions disagree
  double deviation(const Spectrum& other) const;
  std::string to_string() const;
};

struct EigResult {
  Vec values;   // ascending
  Mat vectors;  // orthonormal columns, same order
};

// Cyclic Jacobi rotations, deterministic sweep order. Throws on
// non-convergence after the sweep cap (ill-conditioned input signal).
EigResult eig_decompose(const SymOp& m, const TolerancePolicy& policy = {});
Spectrum cluster_eigenvalues(Vec sorted_values, double cluster_tol);
Spectrum sym_eig(const SymOp& m, const TolerancePolicy& policy = {});

// Dense Cholesky; empty when the matrix is not positive definite.
std::optional<Mat> cholesky(const SymOp& m);
Mat inverse_spd(const SymOp& m);

// V Lambda^{-1/2} V^T and V Lambda^{1/2} V^T; requires positive spectrum.
Mat sym_sqrt_inv(const SymOp& m, const TolerancePolicy& policy = {});

// Orthonormal basis of the null space of A (rows x cols, cols <= 32),
// computed from the spectral decomposition of A^T A.
std::vector<Vec> nullspace(const Mat& a, double rel_tol = 1e-9);

// Gram-Schmidt in index order; vectors below the dependence tolerance are
// dropped. Input vectors share one dimension.
std::vector<Vec> orthonormalize(const std::vector<Vec>& vs, double dep_tol = 1e-10);
// P = sum b_i b_i^T over an orthonormal basis.
Mat projector(const std::vector<Vec>& orthonormal_basis);
// Frobenius distance between the spanned subspaces (basis independent).
double subspace_distance(const std::vector<Vec>& basis_a, const std::vector<Vec>& basis_b);

// Deterministic RNG with portable derived distributions, so reports are
// byte-identical across platforms and thread counts.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  uint64_t next_u64();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();   // Box-Muller
  Vec gaussian_vec(int n);
  Vec unit_vec(int n);
  Mat orthogonal(int n);  // Gram-Schmidt of a Gaussian matrix

 private:
  uint64_t s_[4];
};

// Thread cap from OSSERMAN_LAB_THREADS (0 or unset = hardware concurrency).
int thread_cap();
void set_thread_cap(int cap);  // -1 restores the environment value
// Deterministic parallel map: fn(i) for i in [0, count), results must be
// written to disjoint slots by index.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace oslab
