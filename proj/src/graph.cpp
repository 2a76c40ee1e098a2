#include "fgb/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "fgb/errors.hpp"

namespace fgb {

std::string to_string(Observability o) {
  switch (o) {
    case Observability::kStronglyObservable: return "strongly_observable";
    case Observability::kWeaklyObservable: return "weakly_observable";
    case Observability::kUnobservable: return "unobservable";
  }
  return "unknown";
}

FeedbackGraph::FeedbackGraph(int num_nodes,
                             std::vector<std::vector<int>> in_neighbors)
    : num_nodes_(num_nodes), in_(std::move(in_neighbors)) {
  if (num_nodes_ <= 0) {
    throw std::invalid_argument("feedback graph needs at least one node");
  }
  if (static_cast<int>(in_.size()) != num_nodes_) {
    throw std::invalid_argument("in-neighbor list count does not match K");
  }
  out_.assign(num_nodes_, {});
  self_loop_.assign(num_nodes_, 0);
  for (int i = 0; i < num_nodes_; ++i) {
    auto& nbrs = in_[i];
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    for (int j : nbrs) {
      if (j < 0 || j >= num_nodes_) {
        throw std::invalid_argument("in-neighbor index out of range");
      }
      out_[j].push_back(i);
      if (j == i) self_loop_[i] = 1;
    }
  }
  for (auto& o : out_) std::sort(o.begin(), o.end());
  for (int i = 0; i < num_nodes_; ++i) {
    (self_loop_[i] ? self_loops_ : loopless_).push_back(i);
  }

  // Classification is a pure function of the structure; cache it now so the
  // per-round contract checks in the learners are O(1).
  observability_ = Observability::kStronglyObservable;
  for (int i = 0; i < num_nodes_; ++i) {
    if (in_[i].empty()) {
      observability_ = Observability::kUnobservable;
      return;
    }
  }
  for (int i = 0; i < num_nodes_; ++i) {
    if (self_loop_[i]) continue;
    // Without a self-loop, strong observability requires all other nodes as
    // in-neighbors.
    if (static_cast<int>(in_[i].size()) != num_nodes_ - 1) {
      observability_ = Observability::kWeaklyObservable;
      return;
    }
  }
}

bool FeedbackGraph::has_edge(int from, int to) const {
  const auto& nbrs = in_[to];
  return std::binary_search(nbrs.begin(), nbrs.end(), from);
}

Observability classify(const FeedbackGraph& g) { return g.observability(); }

std::vector<int> self_loop_set(const FeedbackGraph& g) {
  return g.self_loop_set();
}

double observation_probability(const FeedbackGraph& g,
                               const ProbabilityVector& dist, int i) {
  if (i < 0 || i >= g.num_nodes()) {
    throw std::out_of_range("observation_probability: node out of range");
  }
  double w = 0.0;
  for (int j : g.in_neighbors(i)) w += dist[j];
  return w;
}

double ix_quantity(const FeedbackGraph& g, const ProbabilityVector& dist,
                   double gamma) {
  return ix_quantity(g, dist, dist, gamma);
}

double ix_quantity(const FeedbackGraph& g, const ProbabilityVector& weights,
                   const ProbabilityVector& sampling, double gamma) {
  double q = 0.0;
  for (int i : g.self_loop_set()) {
    if (weights[i] <= 0.0) continue;
    q += weights[i] / (observation_probability(g, sampling, i) + gamma);
  }
  return q;
}

namespace {

// Undirected conflict masks for independence search: bit j of adj[i] is set
// when i and j (i != j) are connected in either direction.
std::vector<std::uint64_t> conflict_masks(const FeedbackGraph& g) {
  const int k = g.num_nodes();
  std::vector<std::uint64_t> adj(k, 0);
  for (int i = 0; i < k; ++i) {
    for (int j : g.in_neighbors(i)) {
      if (j == i) continue;
      adj[i] |= std::uint64_t{1} << j;
      adj[j] |= std::uint64_t{1} << i;
    }
  }
  return adj;
}

void mis_search(std::uint64_t candidates, int size,
                const std::vector<std::uint64_t>& adj, int& best) {
  if (size + std::popcount(candidates) <= best) return;
  if (candidates == 0) {
    best = std::max(best, size);
    return;
  }
  // Branch on the candidate with the most remaining conflicts.
  int pivot = -1, pivot_deg = -1;
  for (std::uint64_t c = candidates; c;) {
    const int v = std::countr_zero(c);
    c &= c - 1;
    const int deg = std::popcount(adj[v] & candidates);
    if (deg > pivot_deg) {
      pivot_deg = deg;
      pivot = v;
    }
  }
  const std::uint64_t rest = candidates & ~(std::uint64_t{1} << pivot);
  mis_search(rest & ~adj[pivot], size + 1, adj, best);
  if (pivot_deg > 0) mis_search(rest, size, adj, best);
}

}  // namespace

int independence_number_exact(const FeedbackGraph& g, int max_nodes) {
  const int k = g.num_nodes();
  if (k > max_nodes || k > 64) {
    throw std::invalid_argument(
        "independence_number_exact: graph too large for exact search");
  }
  const auto adj = conflict_masks(g);
  int best = 0;
  const std::uint64_t all =
      k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  mis_search(all, 0, adj, best);
  return best;
}

namespace {

// cover[i] = set of loopless nodes observed by playing i, as a bitmask over
// positions in the loopless list.
std::vector<std::uint64_t> cover_masks(const FeedbackGraph& g) {
  const auto& loopless = g.loopless_set();
  std::vector<std::uint64_t> cover(g.num_nodes(), 0);
  for (std::size_t pos = 0; pos < loopless.size(); ++pos) {
    for (int i : g.in_neighbors(loopless[pos])) {
      cover[i] |= std::uint64_t{1} << pos;
    }
  }
  return cover;
}

}  // namespace

std::vector<int> greedy_weak_dominating_set(const FeedbackGraph& g) {
  const auto& loopless = g.loopless_set();
  if (loopless.empty()) return {};
  if (loopless.size() > 64) {
    throw std::invalid_argument("greedy_weak_dominating_set: > 64 loopless nodes");
  }
  const auto cover = cover_masks(g);
  std::uint64_t uncovered =
      loopless.size() == 64 ? ~std::uint64_t{0}
                            : (std::uint64_t{1} << loopless.size()) - 1;
  std::vector<int> result;
  while (uncovered) {
    int pick = -1, pick_gain = 0;
    for (int i = 0; i < g.num_nodes(); ++i) {
      const int gain = std::popcount(cover[i] & uncovered);
      if (gain > pick_gain) {  // strict: ties keep the smallest index
        pick_gain = gain;
        pick = i;
      }
    }
    if (pick < 0) {
      throw ProtocolError(
          "greedy_weak_dominating_set: some loopless node has no in-neighbor");
    }
    result.push_back(pick);
    uncovered &= ~cover[pick];
  }
  std::sort(result.begin(), result.end());
  return result;
}

bool is_weak_dominating_set(const FeedbackGraph& g,
                            std::span<const int> candidate) {
  for (int j : g.loopless_set()) {
    bool covered = false;
    for (int i : candidate) {
      if (g.has_edge(i, j)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

namespace {

void cover_search(std::uint64_t uncovered, int size,
                  const std::vector<std::uint64_t>& cover,
                  const std::vector<std::vector<int>>& coverers_of, int& best) {
  if (size >= best) return;
  if (uncovered == 0) {
    best = size;
    return;
  }
  // Branch on the uncovered element with the fewest coverers.
  int elem = -1;
  std::size_t fewest = ~std::size_t{0};
  for (std::uint64_t u = uncovered; u;) {
    const int e = std::countr_zero(u);
    u &= u - 1;
    if (coverers_of[e].size() < fewest) {
      fewest = coverers_of[e].size();
      elem = e;
    }
  }
  for (int i : coverers_of[elem]) {
    cover_search(uncovered & ~cover[i], size + 1, cover, coverers_of, best);
  }
}

}  // namespace

int weak_domination_number_exact(const FeedbackGraph& g, int max_nodes) {
  if (g.num_nodes() > max_nodes) {
    throw std::invalid_argument(
        "weak_domination_number_exact: graph too large for exact search");
  }
  const auto& loopless = g.loopless_set();
  if (loopless.empty()) return 0;
  for (int j : loopless) {
    if (g.in_neighbors(j).empty()) {
      throw ProtocolError("weak_domination_number_exact: unobservable graph");
    }
  }
  const auto cover = cover_masks(g);
  std::vector<std::vector<int>> coverers_of(loopless.size());
  for (std::size_t pos = 0; pos < loopless.size(); ++pos) {
    for (int i : g.in_neighbors(loopless[pos])) coverers_of[pos].push_back(i);
  }
  int best = static_cast<int>(greedy_weak_dominating_set(g).size());
  const std::uint64_t all = (std::uint64_t{1} << loopless.size()) - 1;
  cover_search(all, 0, cover, coverers_of, best);
  return best;
}

FeedbackGraph induced_subgraph(const FeedbackGraph& g,
                               std::span<const int> nodes) {
  std::vector<int> remap(g.num_nodes(), -1);
  for (std::size_t pos = 0; pos < nodes.size(); ++pos) {
    remap[nodes[pos]] = static_cast<int>(pos);
  }
  std::vector<std::vector<int>> in(nodes.size());
  for (std::size_t pos = 0; pos < nodes.size(); ++pos) {
    for (int j : g.in_neighbors(nodes[pos])) {
      if (remap[j] >= 0) in[pos].push_back(remap[j]);
    }
  }
  return FeedbackGraph(static_cast<int>(nodes.size()), std::move(in));
}

namespace {

std::string strip_whitespace(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') out.push_back(c);
  }
  return out;
}

int parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("bad integer '" + s + "' in " + context);
  }
}

}  // namespace

FeedbackGraph parse_graph(const std::string& text) {
  const std::string flat = strip_whitespace(text);
  std::vector<std::string> parts;
  std::string current;
  for (char c : flat) {
    if (c == ';') {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) parts.push_back(current);
  if (parts.empty() || parts[0].rfind("K=", 0) != 0) {
    throw ConfigError("graph text must start with 'K=<int>'");
  }
  const int k = parse_int(parts[0].substr(2), "graph header");
  if (k <= 0) throw ConfigError("graph K must be positive");
  std::vector<std::vector<int>> in(k);
  std::vector<char> seen(k, 0);
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const std::string& entry = parts[p];
    if (entry.empty()) continue;
    const auto colon = entry.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("graph entry '" + entry + "' lacks ':'");
    }
    const int node = parse_int(entry.substr(0, colon), "graph node index");
    if (node < 0 || node >= k) {
      throw ConfigError("graph node index out of range in '" + entry + "'");
    }
    if (seen[node]) throw ConfigError("graph lists node twice");
    seen[node] = 1;
    std::string list = entry.substr(colon + 1);
    std::string tok;
    std::istringstream ls(list);
    while (std::getline(ls, tok, ',')) {
      if (!tok.empty()) in[node].push_back(parse_int(tok, "graph neighbor list"));
    }
  }
  for (int i = 0; i < k; ++i) {
    if (!seen[i]) {
      throw ConfigError("graph text omits node " + std::to_string(i));
    }
  }
  try {
    return FeedbackGraph(k, std::move(in));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid graph: ") + e.what());
  }
}

std::string format_graph(const FeedbackGraph& g) {
  std::ostringstream out;
  out << "K=" << g.num_nodes();
  for (int i = 0; i < g.num_nodes(); ++i) {
    out << "; " << i << ":";
    bool first = true;
    for (int j : g.in_neighbors(i)) {
      if (!first) out << ",";
      out << j;
      first = false;
    }
  }
  return out.str();
}

std::vector<FeedbackGraph> read_graph_sequence(std::istream& in) {
  std::vector<FeedbackGraph> graphs;
  std::string line;
  while (std::getline(in, line)) {
    const std::string flat = strip_whitespace(line);
    if (flat.empty() || flat[0] == '#') continue;
    graphs.push_back(parse_graph(line));
  }
  return graphs;
}

std::vector<FeedbackGraph> read_graph_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open graph file: " + path);
  auto graphs = read_graph_sequence(in);
  if (graphs.empty()) throw ConfigError("graph file has no graphs: " + path);
  return graphs;
}

}  // namespace fgb
