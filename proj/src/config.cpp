#include "fgb/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fgb/errors.hpp"

namespace fgb {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::string& text) {
  KeyValueFile kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        " has an empty key");
    }
    if (kv.kv_.count(key)) {
      throw ConfigError("duplicate config key: " + key);
    }
    kv.kv_[key] = value;
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool KeyValueFile::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string KeyValueFile::get_string(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

std::string KeyValueFile::get_string(const std::string& key,
                                     const std::string& def) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? def : it->second;
}

long long KeyValueFile::get_int(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t used = 0;
    const long long value = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not an integer: " + v);
  }
}

long long KeyValueFile::get_int(const std::string& key, long long def) const {
  return has(key) ? get_int(key) : def;
}

double KeyValueFile::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t used = 0;
    const double value = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not a number: " + v);
  }
}

double KeyValueFile::get_double(const std::string& key, double def) const {
  return has(key) ? get_double(key) : def;
}

std::vector<double> KeyValueFile::get_double_list(const std::string& key) const {
  const std::string v = get_string(key);
  std::vector<double> out;
  std::istringstream in(v);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + " has a bad number: " + tok);
    }
  }
  if (out.empty()) throw ConfigError("config key " + key + " lists no numbers");
  return out;
}

std::vector<int> KeyValueFile::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (double d : get_double_list(key)) {
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) {
      throw ConfigError("config key " + key + " expects integers");
    }
    out.push_back(i);
  }
  return out;
}

namespace {

const std::vector<std::string> kLearners = {"exp3ix", "strong", "weak",
                                            "strong+doubling"};

}  // namespace

RunConfig parse_run_config(const KeyValueFile& kv) {
  RunConfig cfg;
  cfg.learner = kv.get_string("learner");
  if (std::find(kLearners.begin(), kLearners.end(), cfg.learner) ==
      kLearners.end()) {
    throw ConfigError("unknown learner: " + cfg.learner);
  }
  const std::string default_protocol =
      cfg.learner == "weak" ? "informed" : "uninformed";
  cfg.protocol = kv.get_string("protocol", default_protocol);
  if (cfg.protocol != "informed" && cfg.protocol != "uninformed") {
    throw ConfigError("protocol must be informed or uninformed");
  }
  if (cfg.learner == "weak" && cfg.protocol != "informed") {
    throw ConfigError("the weak learner requires the informed protocol");
  }
  if (cfg.learner != "weak" && cfg.protocol != "uninformed") {
    throw ConfigError("learner " + cfg.learner +
                      " runs under the uninformed protocol");
  }

  cfg.horizon = kv.get_int("T");
  cfg.reps = static_cast<int>(kv.get_int("reps", 1));
  cfg.master_seed = static_cast<std::uint64_t>(kv.get_int("seed", 1));
  cfg.delta = kv.get_double("delta", 0.05);
  cfg.workers = static_cast<int>(kv.get_int("workers", 1));
  cfg.keep_losses = kv.get_int("keep_losses", 0) != 0;
  cfg.out_dir = kv.get_string("out", ".");
  if (cfg.horizon < 1) throw ConfigError("T must be >= 1");
  if (cfg.reps < 1) throw ConfigError("reps must be >= 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");

  cfg.graph.family = kv.get_string("graph.family");
  cfg.graph.k = static_cast<int>(kv.get_int("graph.k", 0));
  if (kv.has("graph.clique_sizes")) {
    cfg.graph.clique_sizes = kv.get_int_list("graph.clique_sizes");
  }
  cfg.graph.density = kv.get_double("graph.density", 0.25);
  cfg.graph.seed = static_cast<std::uint64_t>(kv.get_int("graph.seed", 1));
  cfg.graph.hubs = static_cast<int>(kv.get_int("graph.hubs", 1));
  cfg.graph.file = kv.get_string("graph.file", "");

  cfg.loss.model = kv.get_string("loss.model");
  if (kv.has("loss.means")) cfg.loss.means = kv.get_double_list("loss.means");
  cfg.loss.switch_round = kv.get_int("loss.switch_round", 1);
  cfg.loss.window = static_cast<int>(kv.get_int("loss.window", 50));
  cfg.loss.safe_arm = static_cast<int>(kv.get_int("loss.safe_arm", 1));

  if (kv.has("params.eta")) cfg.eta = kv.get_double("params.eta");
  if (kv.has("params.gamma")) cfg.gamma = kv.get_double("params.gamma");
  if (kv.has("params.beta")) cfg.beta = kv.get_double("params.beta");
  if (kv.has("params.eps")) cfg.eps = kv.get_double("params.eps");
  cfg.doubling_initial_guess = kv.get_double("doubling.initial_guess", 1.0);

  // Reject keys that would otherwise be silently ignored.
  static const std::vector<std::string> known = {
      "learner",       "protocol",       "T",
      "reps",          "seed",           "delta",
      "workers",       "keep_losses",    "out",
      "graph.family",  "graph.k",        "graph.clique_sizes",
      "graph.density", "graph.seed",     "graph.hubs",
      "graph.file",    "loss.model",     "loss.means",
      "loss.switch_round", "loss.window", "loss.safe_arm",
      "params.eta",    "params.gamma",   "params.beta",
      "params.eps",    "doubling.initial_guess"};
  for (const auto& [key, value] : kv.entries()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key: " + key);
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(KeyValueFile::load(path));
}

}  // namespace fgb
