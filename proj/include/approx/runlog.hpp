#ifndef APPROX_RUNLOG_HPP_
#define APPROX_RUNLOG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "approx/types.hpp"

namespace approx {

struct RunRecord {
  long k = 0;
  double elapsed_s = 0.0;
  double objective = 0.0;
  // ||x_k - x_ref||, NaN when no reference point was supplied (not persisted)
  double dist_to_ref = std::numeric_limits<double>::quiet_NaN();
};

struct RunLog {
  std::vector<RunRecord> records;
  // run metadata, written as '#' comment lines ahead of the CSV header
  std::uint64_t seed = 0;
  Index tau = 0;
  std::string stepsizes;
  std::string loss;
  std::string reg;
  std::string mode;
};

// CSV with header "k,elapsed_s,objective"; metadata as '#' comments
void write_runlog(const RunLog& log, const std::string& path);
RunLog read_runlog(const std::string& path);

}  // namespace approx

#endif  // APPROX_RUNLOG_HPP_
