#include "fgb/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fgb/errors.hpp"

namespace fgb {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string traces_to_csv(const std::vector<RegretTrace>& traces) {
  std::string out = "round,rep,cum_loss,cum_regret,q_t,epoch\n";
  for (std::size_t rep = 0; rep < traces.size(); ++rep) {
    const RegretTrace& tr = traces[rep];
    double cum_loss = 0.0;
    for (long long t = 0; t < tr.rounds(); ++t) {
      cum_loss += tr.learner_losses[t];
      out += std::to_string(t + 1);
      out += ',';
      out += std::to_string(rep);
      out += ',';
      out += format_double(cum_loss);
      out += ',';
      out += format_double(tr.regret.fixed_best[t]);
      out += ',';
      out += format_double(tr.q[t]);
      out += ',';
      out += std::to_string(tr.epoch[t]);
      out += '\n';
    }
  }
  return out;
}

void write_csv(const std::vector<RegretTrace>& traces, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write CSV file: " + path);
  const std::string body = traces_to_csv(traces);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

CsvRuns read_run_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV file: " + path);
  CsvRuns runs;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() < 6) {
      throw ConfigError("CSV line " + std::to_string(lineno) +
                        " has too few fields");
    }
    try {
      const std::size_t rep = std::stoul(fields[1]);
      const double regret = std::stod(fields[3]);
      if (runs.regret.size() <= rep) runs.regret.resize(rep + 1);
      runs.regret[rep].push_back(regret);
    } catch (const std::exception&) {
      throw ConfigError("CSV line " + std::to_string(lineno) + " is malformed");
    }
  }
  if (runs.regret.empty()) throw ConfigError("CSV has no data rows: " + path);
  return runs;
}

}  // namespace fgb
