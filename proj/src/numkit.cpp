#include "osserman/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace oslab {

double dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

Vec scaled(const Vec& x, double s) {
  Vec r = x;
  for (double& v : r) v *= s;
  return r;
}

Vec add(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("add: dimension mismatch");
  Vec r = x;
  for (size_t i = 0; i < y.size(); ++i) r[i] += y[i];
  return r;
}

Vec sub(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("sub: dimension mismatch");
  Vec r = x;
  for (size_t i = 0; i < y.size(); ++i) r[i] -= y[i];
  return r;
}

void deflate(Vec& x, const Vec& u) {
  double c = dot(x, u);
  for (size_t i = 0; i < x.size(); ++i) x[i] -= c * u[i];
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Mat::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Mat::apply: dimension mismatch");
  Vec y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vec Mat::column(int j) const {
  Vec c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void Mat::set_column(int j, const Vec& c) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
}

Mat& Mat::operator+=(const Mat& o) {
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Mat product: dimension mismatch");
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }

double frobenius(const Mat& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double max_abs(const Mat& m) {
  double s = 0.0;
  for (double v : m.data()) s = std::max(s, std::fabs(v));
  return s;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      double aij = a(i, j);
      if (aij == 0.0) continue;
      for (int s = 0; s < b.rows(); ++s)
        for (int t = 0; t < b.cols(); ++t) k(i * b.rows() + s, j * b.cols() + t) = aij * b(s, t);
    }
  return k;
}

Mat outer(const Vec& x, const Vec& y) {
  Mat m(static_cast<int>(x.size()), static_cast<int>(y.size()));
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = x[i] * y[j];
  return m;
}

SymOp::SymOp(const Mat& raw) {
  if (raw.rows() != raw.cols()) throw std::invalid_argument("SymOp: square matrix required");
  int n = raw.rows();
  m_ = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = 0.5 * (raw(i, j) + raw(j, i));
      m_(i, j) = v;
      m_(j, i) = v;
    }
}

SymOp SymOp::identity(int n) { return SymOp(Mat::identity(n)); }
SymOp SymOp::zero(int n) { return SymOp(Mat(n, n)); }

SymOp SymOp::diag(const Vec& d) {
  Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return SymOp(m);
}

double SymOp::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim(); ++i) t += m_(i, i);
  return t;
}

SkewOp::SkewOp(const Mat& raw) {
  if (raw.rows() != raw.cols()) throw std::invalid_argument("SkewOp: square matrix required");
  int n = raw.rows();
  m_ = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      double v = 0.5 * (raw(i, j) - raw(j, i));
      m_(i, j) = v;
      m_(j, i) = -v;
    }
}

SkewOp SkewOp::zero(int n) { return SkewOp(Mat(n, n)); }

SkewOp wedge(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("wedge: dimension mismatch");
  return SkewOp(outer(y, x) - outer(x, y));
}

void TolerancePolicy::check() const {
  if (eig_tol <= 0 || cluster_tol <= 0 || identity_tol <= 0 || fd_tol <= 0)
    throw std::invalid_argument("TolerancePolicy: tolerances must be positive");
}

int Spectrum::dimension() const {
  int d = 0;
  for (const Cluster& c : clusters) d += c.multiplicity;
  return d;
}

double Spectrum::deviation(const Spectrum& other) const {
  Vec a, b;
  for (const Cluster& c : clusters) a.insert(a.end(), c.multiplicity, c.value);
  for (const Cluster& c : other.clusters) b.insert(b.end(), c.multiplicity, c.value);
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

std::string Spectrum::to_string() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (i) os << ", ";
    os << clusters[i].value << ":" << clusters[i].multiplicity;
  }
  os << "}";
  return os.str();
}

EigResult eig_decompose(const SymOp& m, const TolerancePolicy& policy) {
  policy.check();
  int n = m.dim();
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("eig_decompose: dimension out of range");
  Mat a = m.mat();
  Mat v = Mat::identity(n);

  double anorm = frobenius(a);
  auto offdiag = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 64;
  bool converged = (anorm == 0.0);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (offdiag() <= 0.5 * policy.eig_tol * anorm) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::fabs(apq) <= 1e-300) continue;
        double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
        double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);
        double h = t * apq;
        a(p, p) -= h;
        a(q, q) += h;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        auto rotate = [&](int i, int j, int k, int l) {
          double g = a(i, j), hh = a(k, l);
          a(i, j) = g - s * (hh + g * tau);
          a(k, l) = hh + s * (g - hh * tau);
        };
        // only the upper triangle is kept current; nothing below it is read
        for (int j = 0; j < p; ++j) rotate(j, p, j, q);
        for (int j = p + 1; j < q; ++j) rotate(p, j, j, q);
        for (int j = q + 1; j < n; ++j) rotate(p, j, q, j);
        for (int j = 0; j < n; ++j) {
          double g = v(j, p), hh = v(j, q);
          v(j, p) = g - s * (hh + g * tau);
          v(j, q) = hh + s * (g - hh * tau);
        }
      }
    }
  }
  if (!converged && offdiag() > 0.5 * policy.eig_tol * anorm)
    throw std::runtime_error("eig_decompose: Jacobi sweeps did not converge (ill-conditioned input)");

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  EigResult r;
  r.values.resize(n);
  r.vectors = Mat(n, n);
  for (int k = 0; k < n; ++k) {
    r.values[k] = a(order[k], order[k]);
    for (int i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
  }
  return r;
}

Spectrum cluster_eigenvalues(Vec sorted_values, double cluster_tol) {
  Spectrum sp;
  sp.cluster_tol = cluster_tol;
  size_t i = 0;
  while (i < sorted_values.size()) {
    size_t j = i + 1;
    double sum = sorted_values[i];
    while (j < sorted_values.size() && sorted_values[j] - sorted_values[j - 1] <= cluster_tol) {
      sum += sorted_values[j];
      ++j;
    }
    sp.clusters.push_back({sum / static_cast<double>(j - i), static_cast<int>(j - i)});
    i = j;
  }
  return sp;
}

Spectrum sym_eig(const SymOp& m, const TolerancePolicy& policy) {
  EigResult r = eig_decompose(m, policy);
  return cluster_eigenvalues(r.values, policy.cluster_tol);
}

std::optional<Mat> cholesky(const SymOp& m) {
  int n = m.dim();
  Mat l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0.0) return std::nullopt;
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

Mat inverse_spd(const SymOp& m) {
  auto l = cholesky(m);
  if (!l) throw std::runtime_error("inverse_spd: matrix is not positive definite");
  int n = m.dim();
  // solve L L^T X = I column by column
  Mat inv(n, n);
  for (int c = 0; c < n; ++c) {
    Vec y(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (int k = 0; k < i; ++k) s -= (*l)(i, k) * y[k];
      y[i] = s / (*l)(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = y[i];
      for (int k = i + 1; k < n; ++k) s -= (*l)(k, i) * y[k];
      y[i] = s / (*l)(i, i);
    }
    inv.set_column(c, y);
  }
  return inv;
}

Mat sym_sqrt_inv(const SymOp& m, const TolerancePolicy& policy) {
  EigResult e = eig_decompose(m, policy);
  int n = m.dim();
  for (double v : e.values)
    if (v <= 0.0) throw std::runtime_error("sym_sqrt_inv: spectrum not positive");
  Mat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += e.vectors(i, k) * e.vectors(j, k) / std::sqrt(e.values[k]);
      r(i, j) = s;
      r(j, i) = s;
    }
  return r;
}

std::vector<Vec> nullspace(const Mat& a, double rel_tol) {
  int cols = a.cols();
  if (cols > kMaxDim) throw std::invalid_argument("nullspace: too many columns");
  Mat gram(cols, cols);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int r = 0; r < a.rows(); ++r) s += a(r, i) * a(r, j);
      gram(i, j) = s;
      gram(j, i) = s;
    }
  EigResult e = eig_decompose(SymOp(gram));
  double scale = std::max(e.values.empty() ? 0.0 : std::fabs(e.values.back()), 1.0);
  std::vector<Vec> basis;
  for (int k = 0; k < cols; ++k)
    if (std::fabs(e.values[k]) <= rel_tol * scale) basis.push_back(e.vectors.column(k));
  return basis;
}

std::vector<Vec> orthonormalize(const std::vector<Vec>& vs, double dep_tol) {
  std::vector<Vec> basis;
  for (const Vec& v : vs) {
    Vec w = v;
    for (const Vec& b : basis) deflate(w, b);
    // second pass for numerical orthogonality
    for (const Vec& b : basis) deflate(w, b);
    double nw = norm(w);
    if (nw > dep_tol) basis.push_back(scaled(w, 1.0 / nw));
  }
  return basis;
}

Mat projector(const std::vector<Vec>& basis) {
  if (basis.empty()) throw std::invalid_argument("projector: empty basis");
  int n = static_cast<int>(basis.front().size());
  Mat p(n, n);
  for (const Vec& b : basis) p += outer(b, b);
  return p;
}

double subspace_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  return frobenius(projector(orthonormalize(a)) - projector(orthonormalize(b)));
}

// xoshiro256** — fixed bit-level behaviour everywhere, unlike the
// distribution templates in <random>.
namespace {
inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(uint64_t seed) {
  uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

uint64_t Rng::next_u64() {
  uint64_t result = rotl(s_[1] * 5, 7) * 9;
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

Vec Rng::gaussian_vec(int n) {
  Vec v(n);
  for (double& x : v) x = normal();
  return v;
}

Vec Rng::unit_vec(int n) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec v = gaussian_vec(n);
    double nv = norm(v);
    if (nv > 1e-8) return scaled(v, 1.0 / nv);
  }
  throw std::runtime_error("unit_vec: degenerate draws");
}

Mat Rng::orthogonal(int n) {
  std::vector<Vec> cols;
  while (static_cast<int>(cols.size()) < n) {
    std::vector<Vec> candidate = cols;
    candidate.push_back(gaussian_vec(n));
    candidate = orthonormalize(candidate, 1e-8);
    if (static_cast<int>(candidate.size()) == static_cast<int>(cols.size()) + 1) cols = candidate;
  }
  Mat q(n, n);
  for (int j = 0; j < n; ++j) q.set_column(j, cols[j]);
  return q;
}

namespace {
int g_thread_override = -1;
}

int thread_cap() {
  if (g_thread_override >= 0 && g_thread_override != 0) return g_thread_override;
  int cap = 0;
  if (g_thread_override < 0) {
    if (const char* env = std::getenv("OSSERMAN_LAB_THREADS")) cap = std::atoi(env);
  }
  if (cap <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    cap = hw ? static_cast<int>(hw) : 1;
  }
  return cap;
}

void set_thread_cap(int cap) { g_thread_override = cap; }

void parallel_for(int count, const std::function<void(int)>& fn) {
  int threads = std::min(thread_cap(), count);
  if (threads <= 1 || count < 4) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (int i = t; i < count; i += threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace oslab
