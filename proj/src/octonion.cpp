#include "osserman/octonion.hpp"

#include <cmath>

namespace oslab::oct {

namespace {

// Cayley-Dickson product on coefficient arrays of length dim = 2^k:
// (a1,a2)(b1,b2) = (a1 b1 - b2* a2, b2 a1 + a2 b1*).
void cd_conj(const double* a, double* out, int dim) {
  out[0] = a[0];
  for (int i = 1; i < dim; ++i) out[i] = -a[i];
}

void cd_mul(const double* a, const double* b, double* out, int dim) {
  if (dim == 1) {
    out[0] = a[0] * b[0];
    return;
  }
  int h = dim / 2;
  std::vector<double> t1(h), t2(h), c(h);
  // first half: a1 b1 - b2* a2
  cd_mul(a, b, out, h);
  cd_conj(b + h, c.data(), h);
  cd_mul(c.data(), a + h, t1.data(), h);
  for (int i = 0; i < h; ++i) out[i] -= t1[i];
  // second half: b2 a1 + a2 b1*
  cd_mul(b + h, a, t2.data(), h);
  cd_conj(b, c.data(), h);
  cd_mul(a + h, c.data(), t1.data(), h);
  for (int i = 0; i < h; ++i) out[h + i] = t2[i] + t1[i];
}

MulTable build_table() {
  MulTable t;
  for (int i = 0; i < 8; ++i) {
    double ei[8] = {0};
    ei[i] = 1.0;
    for (int j = 0; j < 8; ++j) {
      double ej[8] = {0};
      ej[j] = 1.0;
      double prod[8] = {0};
      cd_mul(ei, ej, prod, 8);
      int hits = 0;
      for (int k = 0; k < 8; ++k) {
        if (prod[k] == 0.0) continue;
        ++hits;
        t.index[i][j] = k;
        t.sign[i][j] = prod[k];
      }
      if (hits != 1 || std::fabs(t.sign[i][j]) != 1.0)
        throw std::logic_error("octonion table generation produced a non-basis product");
    }
  }
  return t;
}

}  // namespace

const MulTable& mul_table() {
  static const MulTable t = build_table();
  return t;
}

Octonion inverse(const Octonion& a) {
  double n2 = norm_sq(a);
  if (n2 == 0.0) throw std::invalid_argument("octonion inverse of zero");
  return scale(conj(a), 1.0 / n2);
}

Octonion from_vec(const Vec& v) {
  if (v.size() != 8) throw std::invalid_argument("octonion from_vec: length 8 required");
  Octonion o;
  for (int i = 0; i < 8; ++i) o.c[i] = v[i];
  return o;
}

Vec to_vec(const Octonion& a) { return Vec(a.c.begin(), a.c.end()); }

SkewOp right_mult_operator(const Octonion& u, double tol) {
  if (std::fabs(u.c[0]) > tol)
    throw std::invalid_argument("right_mult_operator: u must be imaginary");
  Mat m(8, 8);
  for (int k = 0; k < 8; ++k) {
    Octonion col = mul(Octonion::basis(k), u);
    for (int i = 0; i < 8; ++i) m(i, k) = col.c[i];
  }
  return SkewOp(m);
}

std::array<SkewOp, 7> octonion_generators() {
  std::array<SkewOp, 7> j;
  for (int i = 1; i <= 7; ++i) j[i - 1] = right_mult_operator(Octonion::basis(i));
  return j;
}

namespace {

double dist_to_span(const Vec& w, const std::array<Vec, 4>& basis) {
  Vec r = w;
  for (const Vec& b : basis) deflate(r, b);
  return norm(r);
}

}  // namespace

CayleyCheck is_cayley_plane(const std::array<Vec, 4>& basis, double tol) {
  CayleyCheck out;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z) {
        Octonion w = mul(from_vec(basis[x]), mul(conj(from_vec(basis[y])), from_vec(basis[z])));
        out.residual = std::max(out.residual, dist_to_span(to_vec(w), basis));
      }
  out.is_plane = out.residual < tol;
  return out;
}

CayleyPlane cayley_plane_span(const Octonion& e, const Octonion& u, const Octonion& v) {
  if (norm_sq(e) == 0.0) throw std::invalid_argument("cayley_plane_span: e must be nonzero");
  if (std::fabs(u.c[0]) > 1e-12 || std::fabs(v.c[0]) > 1e-12)
    throw std::invalid_argument("cayley_plane_span: u, v must be imaginary");
  if (std::fabs(inner(u, v)) > 1e-10 || std::fabs(norm_sq(u) - 1.0) > 1e-10 ||
      std::fabs(norm_sq(v) - 1.0) > 1e-10)
    throw std::invalid_argument("cayley_plane_span: u, v must be orthonormal");

  Octonion eu = mul(e, u);
  std::vector<Vec> span{to_vec(e), to_vec(eu), to_vec(mul(e, v)), to_vec(mul(eu, v))};
  std::vector<Vec> basis = orthonormalize(span);
  if (basis.size() != 4) throw std::runtime_error("cayley_plane_span: degenerate span");

  CayleyPlane p;
  for (int i = 0; i < 4; ++i) p.basis[i] = basis[i];
  CayleyCheck check = is_cayley_plane(p.basis);
  if (!check.is_plane) throw std::runtime_error("cayley_plane_span: closure check failed");
  return p;
}

std::array<Vec, 4> cayley_product_space(const CayleyPlane& p, uint64_t seed) {
  auto star_space = [&](const Octonion& x) {
    std::vector<Vec> vs;
    for (const Vec& b : p.basis) vs.push_back(to_vec(mul(conj(x), from_vec(b))));
    return orthonormalize(vs);
  };

  std::vector<Vec> ref = star_space(from_vec(p.basis[0]));
  if (ref.size() != 4) throw std::runtime_error("cayley_product_space: degenerate image");

  Rng rng(seed);
  for (int trial = 0; trial < 5; ++trial) {
    Vec coeff = rng.unit_vec(4);
    Vec xv(8, 0.0);
    for (int i = 0; i < 4; ++i) xv = add(xv, scaled(p.basis[i], coeff[i]));
    std::vector<Vec> img = star_space(from_vec(xv));
    if (img.size() != 4 || subspace_distance(ref, img) > 1e-10)
      throw std::runtime_error("cayley_product_space: X*P depends on X (not a Cayley plane)");
  }

  std::array<Vec, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = ref[i];
  return out;
}

}  // namespace oslab::oct
