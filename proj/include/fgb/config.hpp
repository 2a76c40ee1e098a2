#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fgb {

// Flat key/value config text: one `key = value` per line, '#' comments,
// blank lines ignored. Keys are dotted for grouping but the file stays
// flat.
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text);
  static KeyValueFile load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& def) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long def) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double def) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

struct GraphConfig {
  std::string family;  // self_loops_only | union_of_cliques | ...
  int k = 0;
  std::vector<int> clique_sizes;
  double density = 0.25;
  std::uint64_t seed = 1;
  int hubs = 1;
  std::string file;
};

struct LossConfig {
  std::string model;  // bernoulli | late_switch | adaptive_targeting
  std::vector<double> means;
  long long switch_round = 1;
  int window = 50;
  int safe_arm = 1;
};

struct RunConfig {
  std::string learner;   // exp3ix | strong | weak | strong+doubling
  std::string protocol;  // informed | uninformed (defaulted by learner)
  long long horizon = 0;
  int reps = 1;
  std::uint64_t master_seed = 1;
  double delta = 0.05;
  int workers = 1;
  bool keep_losses = false;
  GraphConfig graph;
  LossConfig loss;
  // Optional schedule overrides.
  std::optional<double> eta, gamma, beta, eps;
  double doubling_initial_guess = 1.0;
  std::string out_dir = ".";
};

// Builds and validates a RunConfig. Throws ConfigError on anything invalid,
// including learner/protocol mismatches.
RunConfig parse_run_config(const KeyValueFile& kv);
RunConfig load_run_config(const std::string& path);

}  // namespace fgb
