#include "approx/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "approx/sampling.hpp"

namespace approx {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

double parse_double(const char* s, char** end) {
  errno = 0;
  const double v = std::strtod(s, end);
  if (*end == s || errno == ERANGE) *end = nullptr;
  return v;
}

}  // namespace

Dataset read_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_libsvm: cannot open '" + path + "'");

  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> labels;
  std::vector<Index> line_idx;  // per-line feature indices, for duplicate checks
  Index max_col = -1;
  std::size_t line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    const char* p = line.c_str();
    char* end = nullptr;

    const double label = parse_double(p, &end);
    if (end == nullptr) parse_fail(path, line_no, "expected a numeric label");
    labels.push_back(label);

    line_idx.clear();
    p = end;
    while (true) {
      while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
      if (*p == '\0') break;

      errno = 0;
      const long long raw = std::strtoll(p, &end, 10);
      if (end == p || errno == ERANGE) parse_fail(path, line_no, "expected a feature index");
      if (raw < 1) parse_fail(path, line_no, "feature indices are 1-based");
      if (raw > std::numeric_limits<SpMat::StorageIndex>::max() - 1)
        parse_fail(path, line_no, "feature index overflows storage index");
      if (*end != ':') parse_fail(path, line_no, "expected ':' after feature index");
      p = end + 1;

      const double val = parse_double(p, &end);
      if (end == nullptr) parse_fail(path, line_no, "expected a numeric feature value");
      p = end;

      const Index col = static_cast<Index>(raw - 1);
      line_idx.push_back(col);
      max_col = std::max(max_col, col);
      if (val != 0.0)  // explicit zeros are dropped
        triplets.emplace_back(static_cast<Index>(labels.size()) - 1, col, val);
    }

    std::sort(line_idx.begin(), line_idx.end());
    if (std::adjacent_find(line_idx.begin(), line_idx.end()) != line_idx.end())
      parse_fail(path, line_no, "duplicate feature index");
  }

  if (labels.empty()) throw std::runtime_error("read_libsvm: '" + path + "' is empty");

  Dataset ds;
  ds.A.resize(static_cast<Index>(labels.size()), max_col + 1);
  ds.A.setFromTriplets(triplets.begin(), triplets.end());
  ds.A.makeCompressed();
  ds.b = Eigen::Map<const Vector>(labels.data(), static_cast<Index>(labels.size()));
  return ds;
}

void write_libsvm(const std::string& path, const SpMat& A, const Eigen::Ref<const Vector>& b) {
  if (b.size() != A.rows()) throw std::invalid_argument("write_libsvm: label count != rows");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_libsvm: cannot open '" + path + "'");
  out << std::setprecision(17);
  Eigen::SparseMatrix<double, Eigen::RowMajor> byrow(A);
  for (Index j = 0; j < byrow.rows(); ++j) {
    out << b[j];
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(byrow, j); it; ++it)
      out << ' ' << (it.col() + 1) << ':' << it.value();
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_libsvm: write failed for '" + path + "'");
}

const char* name(SparsityRegime r) {
  switch (r) {
    case SparsityRegime::Uniform: return "uniform";
    case SparsityRegime::Intermediate: return "intermediate";
    case SparsityRegime::Extreme: return "extreme";
  }
  return "?";
}

SparsityRegime parse_regime(const std::string& s) {
  if (s == "uniform") return SparsityRegime::Uniform;
  if (s == "intermediate") return SparsityRegime::Intermediate;
  if (s == "extreme") return SparsityRegime::Extreme;
  throw std::invalid_argument("unknown sparsity regime '" + s + "'");
}

SpMat gen_synthetic(SparsityRegime regime, Index m, Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("gen_synthetic: m and n must be positive");

  std::vector<Index> row_nnz(static_cast<std::size_t>(m));
  for (Index j = 1; j <= m; ++j) {
    Index w = 0;
    switch (regime) {
      case SparsityRegime::Uniform: w = 30; break;
      case SparsityRegime::Intermediate: w = 1 + (30 * j * j) / (m * m); break;
      case SparsityRegime::Extreme: w = (j == 1) ? 500 : 3; break;
    }
    if (w > n)
      throw std::invalid_argument("gen_synthetic: row " + std::to_string(j) + " wants " +
                                  std::to_string(w) + " nonzeros but n = " + std::to_string(n));
    row_nnz[static_cast<std::size_t>(j - 1)] = w;
  }

  Rng rng(seed);
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(std::accumulate(row_nnz.begin(), row_nnz.end(), Index{0})));
  for (Index j = 0; j < m; ++j) {
    const Index w = row_nnz[static_cast<std::size_t>(j)];
    for (Index t = 0; t < w; ++t) {
      const Index swap_at = t + rng.uniform_index(n - t);
      std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(swap_at)]);
      double val = rng.normal();
      while (val == 0.0) val = rng.normal();
      triplets.emplace_back(j, pool[static_cast<std::size_t>(t)], val);
    }
  }

  SpMat A(m, n);
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();
  return A;
}

Vector row_squared_norms(const SpMat& A) {
  Vector out = Vector::Zero(A.rows());
  for (Index c = 0; c < A.outerSize(); ++c)
    for (SpMat::InnerIterator it(A, c); it; ++it) out[it.row()] += it.value() * it.value();
  return out;
}

std::vector<Index> row_nonzero_counts(const SpMat& A) {
  std::vector<Index> out(static_cast<std::size_t>(A.rows()), 0);
  for (Index c = 0; c < A.outerSize(); ++c)
    for (SpMat::InnerIterator it(A, c); it; ++it) ++out[static_cast<std::size_t>(it.row())];
  return out;
}

void write_runlog(const RunLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_runlog: cannot open '" + path + "'");
  out << std::setprecision(17);
  out << "# seed=" << log.seed << '\n';
  out << "# tau=" << log.tau << '\n';
  out << "# stepsizes=" << log.stepsizes << '\n';
  out << "# loss=" << log.loss << '\n';
  out << "# reg=" << log.reg << '\n';
  out << "# mode=" << log.mode << '\n';
  out << "k,elapsed_s,objective\n";
  for (const RunRecord& r : log.records)
    out << r.k << ',' << r.elapsed_s << ',' << r.objective << '\n';
  if (!out) throw std::runtime_error("write_runlog: write failed for '" + path + "'");
}

RunLog read_runlog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_runlog: cannot open '" + path + "'");
  RunLog log;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string val = line.substr(eq + 1);
      if (key == "seed") log.seed = std::stoull(val);
      else if (key == "tau") log.tau = std::stol(val);
      else if (key == "stepsizes") log.stepsizes = val;
      else if (key == "loss") log.loss = val;
      else if (key == "reg") log.reg = val;
      else if (key == "mode") log.mode = val;
      continue;
    }
    if (!header_seen) {
      if (line != "k,elapsed_s,objective")
        parse_fail(path, line_no, "expected header 'k,elapsed_s,objective'");
      header_seen = true;
      continue;
    }
    RunRecord rec;
    char* end = nullptr;
    rec.k = std::strtol(line.c_str(), &end, 10);
    if (end == line.c_str() || *end != ',') parse_fail(path, line_no, "bad record");
    const char* p = end + 1;
    rec.elapsed_s = parse_double(p, &end);
    if (end == nullptr || *end != ',') parse_fail(path, line_no, "bad record");
    p = end + 1;
    rec.objective = parse_double(p, &end);
    if (end == nullptr) parse_fail(path, line_no, "bad record");
    log.records.push_back(rec);
  }
  if (!header_seen) throw std::runtime_error("read_runlog: '" + path + "' has no header");
  return log;
}

}  // namespace approx
