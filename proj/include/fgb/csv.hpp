#pragma once

#include <string>
#include <vector>

#include "fgb/trace.hpp"

namespace fgb {

// Shortest round-trip decimal form of x (std::to_chars), so output bytes
// are identical across runs and worker counts.
std::string format_double(double x);

// Header: round,rep,cum_loss,cum_regret,q_t,epoch. Rows grouped by rep,
// rounds 1-indexed.
std::string traces_to_csv(const std::vector<RegretTrace>& traces);
void write_csv(const std::vector<RegretTrace>& traces, const std::string& path);

struct CsvRuns {
  // cum_regret curves per rep, round-ordered.
  std::vector<std::vector<double>> regret;
};

CsvRuns read_run_csv(const std::string& path);

}  // namespace fgb
