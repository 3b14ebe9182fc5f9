#include "scope/bench/dataset_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace scope::bench {

namespace {

constexpr const char* kMagic = "%scope-matrix";

void expect_field(std::istream& in, const std::string& key, std::string& value) {
  std::string got;
  if (!(in >> got >> value) || got != key) throw std::runtime_error("matrix file: expected '" + key + "' header field");
}

}  // namespace

void write_matrix(std::ostream& out, const Matrix& m) {
  out << kMagic << " 1\nrows " << m.rows() << "\ncols " << m.cols() << "\ndtype float64\n";
  char buf[32];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Matrix read_matrix(std::istream& in) {
  std::string magic, version, rows, cols, dtype;
  if (!(in >> magic >> version) || magic != kMagic) throw std::runtime_error("matrix file: missing %scope-matrix magic");
  if (version != "1") throw std::runtime_error("matrix file: unsupported version " + version);
  expect_field(in, "rows", rows);
  expect_field(in, "cols", cols);
  expect_field(in, "dtype", dtype);
  if (dtype != "float64") throw std::runtime_error("matrix file: unsupported dtype " + dtype);
  const Index r = std::stol(rows);
  const Index c = std::stol(cols);
  if (r < 0 || c < 0) throw std::runtime_error("matrix file: negative shape");
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) {
      std::string tok;
      if (!(in >> tok)) throw std::runtime_error("matrix file: truncated data");
      std::size_t used = 0;
      m(i, j) = std::stod(tok, &used);
      if (used != tok.size()) throw std::runtime_error("matrix file: bad value '" + tok + "'");
    }
  }
  std::string extra;
  if (in >> extra) throw std::runtime_error("matrix file: trailing data");
  return m;
}

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_matrix(out, m);
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_matrix(in);
}

nlohmann::json truth_to_json(const TruthSpec& truth) {
  nlohmann::json doc;
  doc["p"] = truth.p;
  doc["s_true"] = truth.s_true;
  doc["support"] = truth.support.indices();
  std::vector<double> values;
  for (Index j : truth.support) values.push_back(truth.theta_star.values[j]);
  doc["signal_values"] = values;
  doc["signal_magnitude"] = truth.signal_magnitude;
  doc["seed"] = truth.seed;
  return doc;
}

TruthSpec truth_from_json(const nlohmann::json& doc) {
  TruthSpec truth;
  truth.p = doc.at("p").get<Index>();
  truth.s_true = doc.at("s_true").get<Index>();
  truth.support = SupportSet::from_unsorted(doc.at("support").get<std::vector<Index>>(), truth.p);
  const auto values = doc.at("signal_values").get<std::vector<double>>();
  if (static_cast<Index>(values.size()) != truth.support.size() || truth.support.size() != truth.s_true) {
    throw std::runtime_error("truth sidecar: support and signal_values disagree with s_true");
  }
  truth.theta_star = ParamVector::scatter(truth.support, Eigen::Map<const Vector>(values.data(), truth.s_true));
  truth.signal_magnitude = doc.value("signal_magnitude", 0.0);
  truth.vartheta = truth.support.empty() ? 0.0 : truth.theta_star.values.cwiseAbs().maxCoeff();
  for (Index j : truth.support) truth.vartheta = std::min(truth.vartheta, std::abs(truth.theta_star.values[j]));
  truth.seed = doc.value("seed", std::uint64_t{0});
  return truth;
}

}  // namespace scope::bench
