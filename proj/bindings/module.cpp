// pybind11 surface over the curvature lab: the main operations with numpy
// arrays for operators and tensors.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "osserman/acceptance.hpp"
#include "osserman/conformal.hpp"
#include "osserman/geodiff.hpp"
#include "osserman/jsonio.hpp"
#include "osserman/octonion.hpp"

namespace py = pybind11;
using namespace oslab;

namespace {

py::array_t<double> mat_to_numpy(const Mat& m) {
  py::array_t<double> a({m.rows(), m.cols()});
  auto buf = a.mutable_unchecked<2>();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) buf(i, j) = m(i, j);
  return a;
}

Mat numpy_to_mat(const py::array_t<double>& a) {
  auto buf = a.unchecked<2>();
  Mat m(static_cast<int>(buf.shape(0)), static_cast<int>(buf.shape(1)));
  for (py::ssize_t i = 0; i < buf.shape(0); ++i)
    for (py::ssize_t j = 0; j < buf.shape(1); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = buf(i, j);
  return m;
}

py::array_t<double> tensor_to_numpy(const curv::CurvTensor& r) {
  int n = r.dim();
  py::array_t<double> a({n, n, n, n});
  auto buf = a.mutable_unchecked<4>();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) buf(i, j, k, l) = r.at(i, j, k, l);
  return a;
}

curv::CurvTensor numpy_to_tensor(const py::array_t<double>& a) {
  auto buf = a.unchecked<4>();
  int n = static_cast<int>(buf.shape(0));
  curv::CurvTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) r.at(i, j, k, l) = buf(i, j, k, l);
  return r;
}

py::dict spectrum_to_dict(const Spectrum& s) {
  py::list values, mults;
  for (const Cluster& c : s.clusters) {
    values.append(c.value);
    mults.append(c.multiplicity);
  }
  py::dict d;
  d["values"] = values;
  d["multiplicities"] = mults;
  d["cluster_tol"] = s.cluster_tol;
  return d;
}

}  // namespace

PYBIND11_MODULE(_oslab, m) {
  m.doc() = "Clifford structures, Osserman curvature algebra and chart cross-validation";

  py::class_<cliff::CliffordSystem>(m, "CliffordSystem")
      .def_readonly("n", &cliff::CliffordSystem::n)
      .def_readonly("nu", &cliff::CliffordSystem::nu)
      .def_readonly("lambda0", &cliff::CliffordSystem::lambda0)
      .def_readonly("eta", &cliff::CliffordSystem::eta)
      .def_property_readonly("J",
                             [](const cliff::CliffordSystem& s) {
                               py::list out;
                               for (const SkewOp& j : s.J) out.append(mat_to_numpy(j.mat()));
                               return out;
                             })
      .def("to_json", [](const cliff::CliffordSystem& s) { return io::dump(io::system_to_json(s)); });

  m.def("radon_bound", &cliff::radon_bound, py::arg("n"));
  m.def("min_module_dim", &cliff::min_module_dim, py::arg("nu"));
  m.def(
      "generate",
      [](int n, int nu, double lambda0, const std::vector<double>& eta, uint64_t seed) {
        std::vector<double> e = eta.empty() ? std::vector<double>(nu, 1.0) : eta;
        return cliff::generate(n, nu, lambda0, e, seed);
      },
      py::arg("n"), py::arg("nu"), py::arg("lambda0") = 1.0,
      py::arg("eta") = std::vector<double>{}, py::arg("seed") = 0);
  m.def(
      "validate",
      [](const cliff::CliffordSystem& s) {
        cliff::ValidationReport rep = cliff::validate(s);
        py::dict d;
        d["skew"] = rep.skew_residual;
        d["orthogonality"] = rep.orthogonality_residual;
        d["anticommute"] = rep.anticommute_residual;
        d["hermitian"] = rep.hermitian_residual;
        d["pass"] = rep.pass(1e-10);
        return d;
      },
      py::arg("system"));
  m.def("extend_to_seven", &cliff::extend_to_seven, py::arg("system"), py::arg("xi"),
        py::arg("seed") = 1);
  m.def(
      "classify_r8",
      [](const cliff::CliffordSystem& s) {
        auto c = cliff::classify_r8(s);
        return std::string(c.cls == cliff::R8Class::Cliff3Special ? "Cliff3Special" : "Extendable");
      },
      py::arg("system"));

  m.def(
      "from_clifford",
      [](const cliff::CliffordSystem& s) { return tensor_to_numpy(curv::from_clifford(s)); },
      py::arg("system"));
  m.def(
      "model_tensor",
      [](int nu, int eps, int n) { return tensor_to_numpy(curv::model_tensor(nu, eps, n)); },
      py::arg("nu"), py::arg("eps"), py::arg("n"));
  m.def(
      "jacobi",
      [](const py::array_t<double>& r, const std::vector<double>& x) {
        return mat_to_numpy(curv::jacobi(numpy_to_tensor(r), x).mat());
      },
      py::arg("tensor"), py::arg("x"));
  m.def(
      "osserman_check",
      [](const py::array_t<double>& r, int samples, uint64_t seed) {
        TolerancePolicy pol;
        curv::OssermanReport rep = curv::osserman_check(numpy_to_tensor(r), samples, pol, seed);
        py::dict d;
        d["is_osserman"] = rep.is_osserman;
        d["max_deviation"] = rep.max_spectrum_deviation;
        d["spectrum"] = spectrum_to_dict(rep.reference_spectrum);
        d["samples_used"] = rep.samples_used;
        return d;
      },
      py::arg("tensor"), py::arg("samples") = 200, py::arg("seed") = 7);
  m.def(
      "ricci",
      [](const py::array_t<double>& r) { return mat_to_numpy(curv::ricci(numpy_to_tensor(r)).mat()); },
      py::arg("tensor"));
  m.def(
      "weyl",
      [](const py::array_t<double>& r) { return tensor_to_numpy(curv::weyl(numpy_to_tensor(r))); },
      py::arg("tensor"));
  m.def("c_const", &conf::c_const, py::arg("nu"), py::arg("n"));
  m.def(
      "weyl_norm_sq",
      [](const py::array_t<double>& w) { return conf::weyl_norm_sq(numpy_to_tensor(w)); },
      py::arg("tensor"));
  m.def(
      "model_weyl",
      [](int nu, int eps, double f, int n) {
        return tensor_to_numpy(conf::model_weyl(nu, eps, f, curv::model_system(nu, eps, n)));
      },
      py::arg("nu"), py::arg("eps"), py::arg("f"), py::arg("n"));
  m.def(
      "codazzi_residual",
      [](const py::array_t<double>& rho, const cliff::CliffordSystem& sys, int samples,
         uint64_t seed) {
        return conf::codazzi_residual(SymOp(numpy_to_mat(rho)), sys, samples, {}, seed);
      },
      py::arg("rho"), py::arg("system"), py::arg("samples") = 6, py::arg("seed") = 5);

  m.def(
      "oct_mul",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        oct::Octonion oa = oct::from_vec(a), ob = oct::from_vec(b);
        return oct::to_vec(oct::mul(oa, ob));
      },
      py::arg("a"), py::arg("b"));
  m.def("octonion_table", []() {
    const oct::MulTable& t = oct::mul_table();
    py::list rows;
    for (int i = 0; i < 8; ++i) {
      py::list row;
      for (int j = 0; j < 8; ++j) row.append(py::make_tuple(t.sign[i][j], t.index[i][j]));
      rows.append(row);
    }
    return rows;
  });

  m.def(
      "riemann_at",
      [](const std::string& chart, int dim, const std::vector<double>& x, double h) {
        geo::MetricChart c = chart == "sphere"       ? geo::sphere_stereographic(dim)
                             : chart == "euclidean"  ? geo::euclidean(dim)
                             : chart == "cp2"        ? geo::fubini_study(2)
                             : chart == "ch2"        ? geo::complex_hyperbolic(2)
                             : chart == "cp3"        ? geo::fubini_study(3)
                                                     : throw std::invalid_argument("unknown chart");
        geo::FDConfig cfg{h, false};
        return tensor_to_numpy(geo::riemann_at(c, x, cfg).r);
      },
      py::arg("chart"), py::arg("dim"), py::arg("x"), py::arg("h") = 1e-3);

  m.def(
      "verify_all",
      [](uint64_t seed) {
        accept::Report rep = accept::run_all(seed);
        py::dict d;
        d["all_pass"] = rep.all_pass;
        d["report_json"] = io::dump(accept::report_to_json(rep));
        d["summary"] = accept::summary_lines(rep);
        return d;
      },
      py::arg("seed") = 1);
}
