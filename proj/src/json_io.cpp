#include "qalt/json_io.hpp"

#include <cmath>
#include <fstream>

namespace qalt {

namespace {

void require_fields(const Json& j, std::initializer_list<const char*> keys,
                    const char* what) {
  if (!j.is_object()) {
    throw std::invalid_argument(std::string(what) + ": expected a JSON object");
  }
  for (const char* k : keys) {
    if (!j.contains(k)) {
      throw std::invalid_argument(std::string(what) + ": missing field \"" + k + "\"");
    }
  }
}

std::pair<Index, Index> read_shape(const Json& j, const char* what) {
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument(std::string(what) + ": rows/cols must be positive");
  }
  return {rows, cols};
}

}  // namespace

Json matrix_to_json(const RealMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> data;
  data.reserve(static_cast<size_t>(m.size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) data.push_back(m(i, k));
  j["data"] = data;
  return j;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(static_cast<size_t>(m.size()));
  im.reserve(static_cast<size_t>(m.size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

RealMatrix real_matrix_from_json(const Json& j) {
  require_fields(j, {"rows", "cols", "data"}, "real matrix");
  const auto [rows, cols] = read_shape(j, "real matrix");
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Index>(data.size()) != rows * cols) {
    throw std::invalid_argument("real matrix: data length " +
                                std::to_string(data.size()) + " does not match " +
                                std::to_string(rows * cols));
  }
  RealMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) m(i, k) = data[static_cast<size_t>(i * cols + k)];
  if (!m.allFinite()) throw std::invalid_argument("real matrix: non-finite entries");
  return m;
}

ComplexMatrix complex_matrix_from_json(const Json& j) {
  require_fields(j, {"rows", "cols", "re", "im"}, "complex matrix");
  const auto [rows, cols] = read_shape(j, "complex matrix");
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (static_cast<Index>(re.size()) != rows * cols ||
      static_cast<Index>(im.size()) != rows * cols) {
    throw std::invalid_argument("complex matrix: re/im length does not match shape");
  }
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      const size_t idx = static_cast<size_t>(i * cols + k);
      m(i, k) = Complex(re[idx], im[idx]);
    }
  }
  if (!m.allFinite()) throw std::invalid_argument("complex matrix: non-finite entries");
  return m;
}

Json invariance_to_json(const InvarianceReport& r, double tol) {
  Json j;
  j["symplectic"] = {{"ok", r.symplectic_ok}, {"residual", r.symplectic_residual}, {"tol", tol}};
  j["complex"] = {{"ok", r.complex_ok}, {"residual", r.complex_residual}, {"tol", tol}};
  j["metric"] = {{"ok", r.metric_ok}, {"residual", r.metric_residual}, {"tol", tol}};
  j["all_ok"] = r.all_ok();
  return j;
}

Json alternative_to_json(const AlternativeDescription& d, double tol) {
  Json j;
  j["poisson"] = matrix_to_json(d.triple.c.c);
  j["complex_structure"] = matrix_to_json(d.triple.j.j);
  j["metric"] = matrix_to_json(d.triple.s);
  j["hamiltonian"] = matrix_to_json(d.hamiltonian);
  j["unitary"] = d.unitary;
  j["genuinely_alternative"] = d.genuinely_alternative;
  j["relations"] = {
      {"decomposition", {{"residual", d.residual_decomposition}, {"tol", tol},
                         {"ok", d.residual_decomposition <= tol}}},
      {"complex_commutation", {{"residual", d.residual_complex}, {"tol", tol},
                               {"ok", d.residual_complex <= tol}}},
      {"compatibility", {{"residual", d.residual_compatibility}, {"tol", tol},
                         {"ok", d.residual_compatibility <= tol}}},
  };
  return j;
}

ComplexDeformation deformation_from_json(const Json& j) {
  require_fields(j, {"lambda", "K"}, "deformation");
  const double lambda = j.at("lambda").get<double>();
  const Json& k = j.at("K");
  if (k.is_object() && k.contains("diag_fn")) {
    const auto diag = k.at("diag_fn").get<std::vector<double>>();
    if (diag.empty()) throw std::invalid_argument("deformation: empty diag_fn");
    return ComplexDeformation::from_diagonal(diag, lambda);
  }
  return ComplexDeformation::make(complex_matrix_from_json(k), lambda);
}

std::vector<double> named_table(const std::string& name, double lambda, Index d) {
  std::vector<double> t(static_cast<size_t>(d));
  if (name == "identity") {
    for (auto& v : t) v = 1.0;
  } else if (name == "sinh") {
    const double denom = std::sinh(lambda);
    if (denom == 0.0) {
      throw std::invalid_argument("named_table: sinh requires lambda != 0");
    }
    for (Index n = 0; n < d; ++n) {
      t[static_cast<size_t>(n)] = std::sinh(lambda * static_cast<double>(n)) / denom;
    }
  } else if (name == "affine") {
    for (Index n = 0; n < d; ++n) {
      const double f2 = 1.0 + lambda * static_cast<double>(n);
      if (f2 < 0.0) {
        throw std::invalid_argument("named_table: affine f^2 = 1 + lambda n negative at n = " +
                                    std::to_string(n));
      }
      t[static_cast<size_t>(n)] = std::sqrt(f2);
    }
  } else {
    throw std::invalid_argument("named_table: unknown built-in \"" + name +
                                "\" (use identity, sinh, or affine)");
  }
  return t;
}

std::vector<double> table_from_json(const Json& j, double lambda, Index d) {
  if (j.is_string()) return named_table(j.get<std::string>(), lambda, d);
  if (j.is_array()) {
    auto t = j.get<std::vector<double>>();
    if (static_cast<Index>(t.size()) < d) {
      throw std::invalid_argument("table: has " + std::to_string(t.size()) +
                                  " entries, need " + std::to_string(d));
    }
    return t;
  }
  throw std::invalid_argument("table: expected an array or a built-in name");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace qalt
