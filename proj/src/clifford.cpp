#include "osserman/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osserman/octonion.hpp"

namespace oslab::cliff {

namespace {

const Mat& rot() {
  static const Mat m = [] {
    Mat r(2, 2);
    r(0, 1) = -1.0;
    r(1, 0) = 1.0;
    return r;
  }();
  return m;
}

const Mat& flip() {
  static const Mat m = [] {
    Mat f(2, 2);
    f(0, 1) = 1.0;
    f(1, 0) = 1.0;
    return f;
  }();
  return m;
}

const Mat& sign2() {
  static const Mat m = [] {
    Mat s(2, 2);
    s(0, 0) = 1.0;
    s(1, 1) = -1.0;
    return s;
  }();
  return m;
}

// Maximal anticommuting almost Hermitian families on the irreducible module
// dimensions. d = 2, 4 come from the 2x2 block ladder, d = 8 from the
// octonion right multiplications, d = 16 from the doubled octonion action
// (x, y) -> (y u*, -x u) over u in the octonion basis, and d = 32 from the
// generic one-step doubling J -> J (x) sign2, I (x) rot.
std::vector<Mat> maximal_family(int d) {
  switch (d) {
    case 2:
      return {rot()};
    case 4:
      return {kron(rot(), sign2()), kron(rot(), flip()), kron(Mat::identity(2), rot())};
    case 8: {
      std::vector<Mat> j;
      for (const SkewOp& g : oct::octonion_generators()) j.push_back(g.mat());
      return j;
    }
    case 16: {
      std::vector<Mat> j;
      for (int i = 0; i < 8; ++i) {
        oct::Octonion u = oct::Octonion::basis(i);
        Mat ru(8, 8), rustar(8, 8);
        for (int k = 0; k < 8; ++k) {
          oct::Octonion col = oct::mul(oct::Octonion::basis(k), u);
          oct::Octonion cols = oct::mul(oct::Octonion::basis(k), oct::conj(u));
          for (int r = 0; r < 8; ++r) {
            ru(r, k) = col.c[r];
            rustar(r, k) = cols.c[r];
          }
        }
        Mat g(16, 16);
        for (int r = 0; r < 8; ++r)
          for (int c = 0; c < 8; ++c) {
            g(r, 8 + c) = rustar(r, c);
            g(8 + r, c) = -ru(r, c);
          }
        j.push_back(g);
      }
      return j;
    }
    case 32: {
      std::vector<Mat> j;
      for (const Mat& g : maximal_family(16)) j.push_back(kron(g, sign2()));
      j.push_back(kron(Mat::identity(16), rot()));
      return j;
    }
    default:
      throw std::invalid_argument("maximal_family: unsupported module dimension");
  }
}

CliffordSystem assemble(int n, int nu, double lambda0, const std::vector<double>& eta,
                        uint64_t seed, std::vector<Mat> gens) {
  if (static_cast<int>(eta.size()) != nu)
    throw std::invalid_argument("generate: eta must have nu entries");
  for (double e : eta)
    if (e == 0.0) throw std::invalid_argument("generate: eta entries must be nonzero");

  CliffordSystem sys;
  sys.n = n;
  sys.nu = nu;
  sys.lambda0 = lambda0;
  sys.eta = eta;
  if (seed != 0) {
    Rng rng(seed);
    Mat q = rng.orthogonal(n);
    Mat qt = q.transpose();
    for (Mat& g : gens) g = q * g * qt;
  }
  for (Mat& g : gens) sys.J.emplace_back(g);

  ValidationReport report = validate(sys);
  if (!report.pass(1e-10))
    throw std::runtime_error("generate: constructed system failed validation");
  return sys;
}

}  // namespace

int radon_bound(int n) {
  if (n < 1) throw std::invalid_argument("radon_bound: n must be positive");
  int m = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++m;
  }
  int a = m / 4;
  int b = m % 4;
  return (1 << b) + 8 * a - 1;
}

int min_module_dim(int nu) {
  if (nu < 1 || nu > 24) throw std::invalid_argument("min_module_dim: 1 <= nu <= 24 required");
  for (int k = 0; k <= 24; ++k) {
    int d = 1 << k;
    if (radon_bound(d) >= nu) return d;
  }
  throw std::logic_error("min_module_dim: search exhausted");
}

CliffordSystem generate(int n, int nu, double lambda0, const std::vector<double>& eta,
                        uint64_t seed) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("generate: 2 <= n <= 32 required");
  if (nu < 0) throw std::invalid_argument("generate: nu must be nonnegative");
  if (nu == 0) return assemble(n, 0, lambda0, {}, seed, {});
  if (nu > radon_bound(n))
    throw std::invalid_argument("generate: nu exceeds the Radon-Hurwitz bound (Hurwitz obstruction)");
  int d = min_module_dim(nu);
  if (n % d != 0)
    throw std::invalid_argument(
        "generate: dimension is not a multiple of the irreducible module dimension");

  std::vector<Mat> gens;
  std::vector<Mat> family = maximal_family(d);
  Mat blocks = Mat::identity(n / d);
  for (int i = 0; i < nu; ++i) gens.push_back(kron(family[i], blocks));
  return assemble(n, nu, lambda0, eta, seed, std::move(gens));
}

CliffordSystem octonionic_system(int nu, double lambda0, const std::vector<double>& eta,
                                 uint64_t seed) {
  if (nu < 1 || nu > 7) throw std::invalid_argument("octonionic_system: 1 <= nu <= 7 required");
  std::vector<Mat> gens;
  auto family = oct::octonion_generators();
  for (int i = 0; i < nu; ++i) gens.push_back(family[i].mat());
  return assemble(8, nu, lambda0, eta, seed, std::move(gens));
}

double ValidationReport::max_residual() const {
  return std::max({skew_residual, orthogonality_residual, anticommute_residual,
                   hermitian_residual});
}

bool ValidationReport::pass(double tol) const {
  return max_residual() < tol && (eta_min_abs > 0.0);
}

ValidationReport validate(const CliffordSystem& sys) {
  ValidationReport rep;
  rep.eta_min_abs = sys.eta.empty() ? 1.0 : 0.0;
  for (double e : sys.eta)
    rep.eta_min_abs = (rep.eta_min_abs == 0.0) ? std::fabs(e)
                                               : std::min(rep.eta_min_abs, std::fabs(e));
  Mat id = Mat::identity(sys.n);
  for (int i = 0; i < sys.nu; ++i) {
    const Mat& ji = sys.J[i].mat();
    rep.skew_residual = std::max(rep.skew_residual, frobenius(ji + ji.transpose()));
    rep.orthogonality_residual =
        std::max(rep.orthogonality_residual, frobenius(ji.transpose() * ji - id));
    for (int j = 0; j <= i; ++j) {
      const Mat& jj = sys.J[j].mat();
      Mat anti = ji * jj + jj * ji;
      if (i == j) anti += 2.0 * id;
      rep.anticommute_residual = std::max(rep.anticommute_residual, frobenius(anti));
    }
  }
  // sampled form of <J_i X, J_j X> = delta_ij ||X||^2
  Rng rng(987654321ULL);
  for (int t = 0; t < 16; ++t) {
    Vec x = rng.gaussian_vec(sys.n);
    double x2 = dot(x, x);
    for (int i = 0; i < sys.nu; ++i) {
      Vec jix = sys.J[i].apply(x);
      for (int j = 0; j <= i; ++j) {
        double expected = (i == j) ? x2 : 0.0;
        double got = dot(jix, sys.J[j].apply(x));
        rep.hermitian_residual = std::max(rep.hermitian_residual, std::fabs(got - expected));
      }
    }
  }
  return rep;
}

R8Classification classify_r8(const CliffordSystem& sys, double tol) {
  if (sys.n != 8) throw std::invalid_argument("classify_r8: n = 8 required");
  if (sys.nu < 1 || sys.nu > 7) throw std::invalid_argument("classify_r8: 1 <= nu <= 7 required");
  R8Classification out;
  if (sys.nu == 3) {
    Mat j12 = sys.J[0].mat() * sys.J[1].mat();
    double dplus = frobenius(j12 - sys.J[2].mat());
    double dminus = frobenius(j12 + sys.J[2].mat());
    out.j1j2_vs_j3 = std::min(dplus, dminus);
    if (out.j1j2_vs_j3 < tol) {
      out.cls = R8Class::Cliff3Special;
      out.sign = dplus <= dminus ? 1 : -1;
      return out;
    }
  } else {
    out.j1j2_vs_j3 = std::numeric_limits<double>::infinity();
  }
  out.cls = R8Class::Extendable;
  return out;
}

namespace {

// Orthonormal basis of the skew 8x8 matrices, pairs (p, q), p < q.
std::vector<std::pair<int, int>> skew_basis_pairs() {
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < 8; ++p)
    for (int q = p + 1; q < 8; ++q) pairs.emplace_back(p, q);
  return pairs;
}

Mat skew_from_coords(const Vec& c, const std::vector<std::pair<int, int>>& pairs) {
  Mat m(8, 8);
  for (size_t k = 0; k < pairs.size(); ++k) {
    auto [p, q] = pairs[k];
    m(p, q) = c[k];
    m(q, p) = -c[k];
  }
  return m;
}

// Next anticommuting almost Hermitian structure for the current family:
// solve {K skew, K J_i = -J_i K} and normalize a random null-space element
// M to K = M (-M^2)^{-1/2}.
Mat next_generator(const std::vector<Mat>& current, Rng& rng) {
  auto pairs = skew_basis_pairs();
  const int dim = static_cast<int>(pairs.size());  // 28
  const int rows = static_cast<int>(current.size()) * 64;
  Mat a(std::max(rows, 1), dim);
  for (size_t g = 0; g < current.size(); ++g) {
    const Mat& j = current[g];
    for (int k = 0; k < dim; ++k) {
      Mat e(8, 8);
      auto [p, q] = pairs[k];
      e(p, q) = 1.0;
      e(q, p) = -1.0;
      Mat anti = e * j + j * e;
      for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) a(static_cast<int>(g) * 64 + r * 8 + c, k) = anti(r, c);
    }
  }
  std::vector<Vec> null = current.empty() ? std::vector<Vec>(0) : nullspace(a, 1e-9);
  if (current.empty()) {
    null.clear();
    for (int k = 0; k < dim; ++k) {
      Vec e(dim, 0.0);
      e[k] = 1.0;
      null.push_back(e);
    }
  }
  if (null.empty()) throw std::runtime_error("extend_to_seven: anticommutant is trivial");

  constexpr int kRetryCap = 32;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    Vec coeff = rng.gaussian_vec(static_cast<int>(null.size()));
    Vec c(dim, 0.0);
    for (size_t b = 0; b < null.size(); ++b)
      for (int k = 0; k < dim; ++k) c[k] += coeff[b] * null[b][k];
    Mat m = skew_from_coords(c, pairs);
    SymOp mm(-1.0 * (m * m));  // = M^T M, PSD
    EigResult e = eig_decompose(mm);
    if (e.values.front() < 1e-8 * std::max(e.values.back(), 1.0)) continue;  // singular draw
    Mat k = m * sym_sqrt_inv(mm);
    // polish skewness against roundoff
    k = 0.5 * (k - k.transpose());
    // a third generator must not close up into the Cliff(3) class with
    // J1 J2 J3 = +-id: that representation admits no further anticommuting
    // structure, so the walk would dead-end one step later
    if (current.size() == 2) {
      Mat prod = current[0] * current[1] * k;
      double c0 = prod(0, 0);
      if (std::fabs(std::fabs(c0) - 1.0) < 1e-6 &&
          frobenius(prod - c0 * Mat::identity(8)) < 1e-6)
        continue;
    }
    return k;
  }
  throw std::runtime_error(
      "extend_to_seven: no admissible completion after the retry cap (misclassified input)");
}

}  // namespace

CliffordSystem extend_to_seven(const CliffordSystem& sys, double xi, uint64_t seed) {
  if (sys.n != 8) throw std::invalid_argument("extend_to_seven: n = 8 required");
  if (xi == 0.0) throw std::invalid_argument("extend_to_seven: xi must be nonzero");
  for (double e : sys.eta)
    if (xi == -e) throw std::invalid_argument("extend_to_seven: xi = -eta_i is inadmissible");
  if (sys.nu == 7) return sys;
  if (classify_r8(sys).cls == R8Class::Cliff3Special)
    throw std::invalid_argument(
        "extend_to_seven: Cliff(3) system with J1 J2 = +-J3 admits no Cliff(7) completion");

  std::vector<Mat> family;
  for (const SkewOp& j : sys.J) family.push_back(j.mat());
  Rng rng(seed == 0 ? 1 : seed);
  while (family.size() < 7) family.push_back(next_generator(family, rng));

  CliffordSystem out;
  out.n = 8;
  out.nu = 7;
  out.lambda0 = sys.lambda0 - 3.0 * xi;
  out.eta.assign(7, xi);
  for (int i = 0; i < sys.nu; ++i) out.eta[i] = sys.eta[i] + xi;
  for (const Mat& g : family) out.J.emplace_back(g);

  ValidationReport rep = validate(out);
  if (!rep.pass(1e-9))
    throw std::runtime_error("extend_to_seven: completed system failed validation");
  return out;
}

NvsnuReport nvsnu_scan(int max_n) {
  if (max_n < 1 || max_n > 512) throw std::invalid_argument("nvsnu_scan: 1 <= maxN <= 512");
  NvsnuReport rep;
  rep.max_n = max_n;
  for (int n = 1; n <= max_n; ++n) {
    if (n == 2 || n == 4 || n == 8 || n == 16) continue;
    int bound = radon_bound(n);
    for (int nu = 1; nu <= bound; ++nu) {
      ++rep.pairs_checked;
      if (n < 3 * nu + 3) rep.violations_i.emplace_back(n, nu);
      if (n == 3 * nu + 3) rep.equalities_i.emplace_back(n, nu);
      if (n <= 4 * nu - 2) rep.exceptions_ii.emplace_back(n, nu);
      bool found = false;
      for (int l = 0; (1 << l) < n; ++l)
        if (nu < (1 << l) && (1 << l) < n) found = true;
      if (!found) rep.violations_iii.emplace_back(n, nu);
    }
  }
  return rep;
}

}  // namespace oslab::cliff
