#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "approx/io.hpp"
#include "approx/sampling.hpp"
#include "test_util.hpp"

using namespace approx;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = "")
      : path("/tmp/approx_test_" + name) {
    if (!content.empty()) {
      std::ofstream f(path);
      f << content;
    }
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("read_libsvm on a hand-built file") {
  TempFile f("basic.svm", "1 1:2.0 3:1.0\n-1 2:4.0\n");
  Dataset ds = read_libsvm(f.path);
  CHECK(ds.A.rows() == 2);
  CHECK(ds.A.cols() == 3);
  CHECK(ds.A.nonZeros() == 3);
  CHECK(ds.b[0] == 1.0);
  CHECK(ds.b[1] == -1.0);
  CHECK(ds.A.coeff(0, 0) == 2.0);
  CHECK(ds.A.coeff(0, 2) == 1.0);
  CHECK(ds.A.coeff(1, 1) == 4.0);
}

TEST_CASE("read_libsvm error paths") {
  TempFile empty("empty.svm", "");
  std::ofstream(empty.path).flush();
  CHECK_THROWS_WITH_AS(static_cast<void>(read_libsvm(empty.path)), doctest::Contains("empty"),
                       std::runtime_error);

  TempFile dup("dup.svm", "1 2:1 2:3\n");
  CHECK_THROWS_WITH_AS(static_cast<void>(read_libsvm(dup.path)),
                       doctest::Contains("duplicate"), std::runtime_error);

  TempFile noval("noval.svm", "1 1:2\n-1 3\n");
  CHECK_THROWS_WITH_AS(static_cast<void>(read_libsvm(noval.path)), doctest::Contains(":2:"),
                       std::runtime_error);

  TempFile zeroidx("zeroidx.svm", "1 0:2\n");
  CHECK_THROWS_WITH_AS(static_cast<void>(read_libsvm(zeroidx.path)),
                       doctest::Contains("1-based"), std::runtime_error);

  TempFile nolabel("nolabel.svm", "x 1:2\n");
  CHECK_THROWS_AS(static_cast<void>(read_libsvm(nolabel.path)), std::runtime_error);

  CHECK_THROWS_AS(static_cast<void>(read_libsvm("/nonexistent/path.svm")), std::runtime_error);
}

TEST_CASE("read_libsvm drops explicit zeros but keeps the row") {
  TempFile f("zeros.svm", "2 1:0.0 2:5\n-3\n");
  Dataset ds = read_libsvm(f.path);
  CHECK(ds.A.rows() == 2);  // label-only line is an all-zero row
  CHECK(ds.A.nonZeros() == 1);
  CHECK(ds.b[1] == -3.0);
}

TEST_CASE("libsvm round trip conserves the matrix") {
  Rng rng(3);
  const SpMat A = testutil::random_sparse(7, 5, 0.4, rng);
  const Vector b = testutil::random_vector(7, rng);
  TempFile f("roundtrip.svm");
  write_libsvm(f.path, A, b);
  Dataset ds = read_libsvm(f.path);
  CHECK(ds.A.rows() == 7);
  CHECK(ds.A.cols() == 5);
  CHECK(ds.A.nonZeros() == A.nonZeros());
  CHECK((Eigen::MatrixXd(ds.A) - Eigen::MatrixXd(A)).norm() == 0.0);
  CHECK((ds.b - b).norm() == 0.0);
}

TEST_CASE("synthetic generator row supports") {
  const Index m = 1000, n = 1000;

  const SpMat uni = gen_synthetic(SparsityRegime::Uniform, m, n, 1);
  for (Index c : row_nonzero_counts(uni)) CHECK(c == 30);

  const SpMat mid = gen_synthetic(SparsityRegime::Intermediate, m, n, 2);
  const auto mid_counts = row_nonzero_counts(mid);
  CHECK(mid_counts.front() == 1);  // 1 + floor(30/m^2)
  CHECK(mid_counts.back() == 31);  // 1 + floor(30 m^2/m^2)
  for (std::size_t j = 1; j < mid_counts.size(); ++j) {
    CHECK(mid_counts[j] >= mid_counts[j - 1]);
    const Index jj = static_cast<Index>(j) + 1;
    CHECK(mid_counts[j] == 1 + (30 * jj * jj) / (m * m));
  }

  const SpMat ext = gen_synthetic(SparsityRegime::Extreme, m, n, 3);
  const auto ext_counts = row_nonzero_counts(ext);
  CHECK(ext_counts[0] == 500);
  for (std::size_t j = 1; j < ext_counts.size(); ++j) CHECK(ext_counts[j] == 3);

  // determinism and seed sensitivity
  const SpMat again = gen_synthetic(SparsityRegime::Uniform, m, n, 1);
  CHECK((Eigen::MatrixXd(uni) - Eigen::MatrixXd(again)).norm() == 0.0);
  const SpMat other = gen_synthetic(SparsityRegime::Uniform, m, n, 9);
  CHECK((Eigen::MatrixXd(uni) - Eigen::MatrixXd(other)).norm() != 0.0);

  // support wider than the column count
  CHECK_THROWS_AS(static_cast<void>(gen_synthetic(SparsityRegime::Uniform, 10, 20, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(gen_synthetic(SparsityRegime::Extreme, 10, 400, 0)),
                  std::invalid_argument);
}

TEST_CASE("row metadata helpers") {
  SpMat A(2, 3);
  A.insert(0, 0) = 3.0;
  A.insert(1, 2) = -4.0;
  A.makeCompressed();
  const Vector sq = row_squared_norms(A);
  CHECK(sq[0] == 9.0);
  CHECK(sq[1] == 16.0);
}

TEST_CASE("runlog writing and parse-back") {
  RunLog log;
  log.seed = 77;
  log.tau = 4;
  log.stepsizes = "fr";
  log.loss = "square";
  log.reg = "l1";
  log.mode = "approx";

  TempFile empty("empty.csv");
  write_runlog(log, empty.path);
  {
    std::ifstream in(empty.path);
    std::string line, last;
    int rows = 0;
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') {
        ++rows;
        last = line;
      }
    }
    CHECK(rows == 1);  // header only
    CHECK(last == "k,elapsed_s,objective");
  }

  log.records.push_back({0, 0.0, 5.0, 0.0});
  log.records.push_back({10, 0.125, 1.0 / 3.0, 0.0});
  TempFile two("two.csv");
  write_runlog(log, two.path);

  RunLog back = read_runlog(two.path);
  CHECK(back.seed == 77);
  CHECK(back.tau == 4);
  CHECK(back.stepsizes == "fr");
  CHECK(back.mode == "approx");
  REQUIRE(back.records.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back.records[i].k == log.records[i].k);
    CHECK(back.records[i].elapsed_s == log.records[i].elapsed_s);
    CHECK(back.records[i].objective == log.records[i].objective);
  }
}
