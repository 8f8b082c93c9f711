#include "osserman/jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace oslab::io {

namespace {

void format_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void dump_rec(std::string& out, const json& j, int indent, int depth) {
  std::string pad(static_cast<size_t>(indent) * depth, ' ');
  std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in;
        out += json(it.key()).dump();
        out += ": ";
        dump_rec(out, it.value(), indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line; nested structures get indented
      bool scalar_only = true;
      for (const auto& v : j)
        if (v.is_structured()) scalar_only = false;
      if (scalar_only) {
        out += "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_rec(out, j[i], indent, depth);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_rec(out, j[i], indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case json::value_t::number_float:
      format_double(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::string out;
  dump_rec(out, j, indent, 0);
  out += "\n";
  return out;
}

json system_to_json(const cliff::CliffordSystem& sys) {
  json j;
  j["n"] = sys.n;
  j["nu"] = sys.nu;
  j["lambda0"] = sys.lambda0;
  j["eta"] = sys.eta;
  json mats = json::array();
  for (const SkewOp& op : sys.J) mats.push_back(op.mat().data());
  j["J"] = std::move(mats);
  return j;
}

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw std::runtime_error("schema violation: " + what);
}

}  // namespace

cliff::CliffordSystem system_from_json(const json& j) {
  if (!j.is_object()) schema_error("CliffordSystem must be an object");
  for (const char* key : {"n", "nu", "lambda0", "eta", "J"})
    if (!j.contains(key)) schema_error(std::string("CliffordSystem missing key '") + key + "'");
  cliff::CliffordSystem sys;
  sys.n = j["n"].get<int>();
  sys.nu = j["nu"].get<int>();
  sys.lambda0 = j["lambda0"].get<double>();
  sys.eta = j["eta"].get<std::vector<double>>();
  if (sys.n < 1 || sys.n > kMaxDim) schema_error("CliffordSystem: n out of range");
  if (static_cast<int>(sys.eta.size()) != sys.nu)
    schema_error("CliffordSystem: eta length must equal nu");
  if (!j["J"].is_array() || static_cast<int>(j["J"].size()) != sys.nu)
    schema_error("CliffordSystem: J must hold nu matrices");
  for (const auto& flat : j["J"]) {
    auto entries = flat.get<std::vector<double>>();
    if (static_cast<int>(entries.size()) != sys.n * sys.n)
      schema_error("CliffordSystem: each J must be a row-major n*n array");
    Mat m(sys.n, sys.n);
    m.data() = entries;
    sys.J.emplace_back(m);
  }
  return sys;
}

json tensor_to_json(const curv::CurvTensor& r, const cliff::CliffordSystem* sys) {
  json j;
  j["n"] = r.dim();
  j["R"] = r.data();
  if (sys != nullptr) j["system"] = system_to_json(*sys);
  return j;
}

TensorFile tensor_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("R"))
    schema_error("CurvTensor must be an object with keys 'n' and 'R'");
  TensorFile out;
  int n = j["n"].get<int>();
  if (n < 2 || n > kMaxDim) schema_error("CurvTensor: n out of range");
  auto flat = j["R"].get<std::vector<double>>();
  size_t want = static_cast<size_t>(n) * n * n * n;
  if (flat.size() != want) schema_error("CurvTensor: R must hold n^4 row-major entries");
  out.r = curv::CurvTensor(n);
  out.r.data() = flat;
  if (j.contains("system")) out.sys = system_from_json(j["system"]);
  return out;
}

json spectrum_to_json(const Spectrum& s) {
  json j;
  j["clusterTol"] = s.cluster_tol;
  json cl = json::array();
  for (const Cluster& c : s.clusters) {
    json e;
    e["value"] = c.value;
    e["multiplicity"] = c.multiplicity;
    cl.push_back(std::move(e));
  }
  j["clusters"] = std::move(cl);
  return j;
}

json osserman_to_json(const curv::OssermanReport& rep) {
  json j;
  j["isOsserman"] = rep.is_osserman;
  j["referenceSpectrum"] = spectrum_to_json(rep.reference_spectrum);
  j["maxSpectrumDeviation"] = rep.max_spectrum_deviation;
  j["samplesUsed"] = rep.samples_used;
  return j;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error("schema violation: input is not valid JSON");
  return j;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

}  // namespace oslab::io
