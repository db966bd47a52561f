#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbsflow/text.hpp"

namespace sbsflow {

struct Edge {
  std::uint32_t i = 0;
  std::uint32_t j = 0;  // i < j
  std::uint64_t weight = 0;
};

/// Undirected weighted co-occurrence graph in compressed adjacency form.
/// Nodes are sorted by label, neighbor lists by node index.
class WordGraph {
 public:
  WordGraph() = default;

  /// Nodes 0..n-1 with the given labels (empty labels allowed for tests).
  /// Duplicate (i, j) entries are summed; self-loops are rejected.
  static WordGraph from_edges(std::vector<std::string> labels, const std::vector<Edge>& edges);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
  std::size_t degree(std::size_t i) const noexcept { return offsets_[i + 1] - offsets_[i]; }

  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> find(const std::string& label) const;

  /// Neighbor indices and weights of node i, as parallel ranges.
  const std::uint32_t* neighbors_begin(std::size_t i) const { return neighbors_.data() + offsets_[i]; }
  const std::uint32_t* neighbors_end(std::size_t i) const { return neighbors_.data() + offsets_[i + 1]; }
  const std::uint64_t* weights_begin(std::size_t i) const { return weights_.data() + offsets_[i]; }

  std::vector<Edge> edges() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> neighbors_;
  std::vector<std::uint64_t> weights_;
};

/// Nodes are every token of a surviving edge plus every token with nonzero
/// prevalence. Records with count below `min_edge_weight` are dropped.
WordGraph build_graph(const std::vector<CooccurrenceRecord>& records,
                      const std::map<std::string, std::uint64_t>& prevalence, std::uint64_t min_edge_weight = 1);

/// Token occurrences over normalized sequences.
std::map<std::string, std::uint64_t> prevalence(const std::vector<TokenSequence>& sequences);

/// Sum over neighbors j of log10((n - 1) / g_j); 0 when isolated or n < 2.
double diversity(const WordGraph& g, std::size_t i);
/// Throws InputError when `label` is not a node.
double diversity(const WordGraph& g, const std::string& label);
std::vector<double> diversity_all(const WordGraph& g, unsigned workers = 1);

enum class EdgeLength { Inverse, Raw };

struct ConnectivityOptions {
  EdgeLength length = EdgeLength::Inverse;  // 1/w, or w
  unsigned workers = 1;
  double tie_tolerance = 1e-12;  // relative, for co-shortest paths
};

/// Unnormalized weighted betweenness: for each node i, the sum over
/// unordered pairs {j, k} not containing i of d_jk(i) / d_jk.
std::vector<double> connectivity(const WordGraph& g, const ConnectivityOptions& options = {});

/// Population mean and standard deviation. `constant` is set when all
/// values are equal (sd is then treated as 0).
struct Moments {
  double mean = 0;
  double sd = 0;
  bool constant = true;
};

Moments moments(const std::vector<double>& values);
double zscore(double x, const Moments& m) noexcept;

/// Population z-scores. All zeros when the values are all equal.
std::vector<double> standardize(const std::vector<double>& values);
std::map<std::string, double> standardize(const std::map<std::string, double>& values);

/// Raw and standardized scores of every node of one window graph.
struct NodeScores {
  std::vector<double> prevalence;
  std::vector<double> diversity;
  std::vector<double> connectivity;
  std::vector<double> z_prevalence;
  std::vector<double> z_diversity;
  std::vector<double> z_connectivity;
  std::vector<double> sbs;
  Moments prevalence_moments;
  Moments diversity_moments;
  Moments connectivity_moments;
};

NodeScores score_all_nodes(const WordGraph& g, const std::map<std::string, std::uint64_t>& prevalence,
                           const ConnectivityOptions& options = {});

struct SbsScore {
  std::string keyword;
  std::size_t window = 0;
  std::uint64_t prevalence_raw = 0;
  double diversity_raw = 0;
  double connectivity_raw = 0;
  double z_prevalence = 0;
  double z_diversity = 0;
  double z_connectivity = 0;
  double sbs = 0;
};

/// sbs = (z_prevalence + z_diversity) + z_connectivity, evaluated in that
/// order. A keyword that is not a node has raw values 0 and is standardized
/// against the window's node distribution.
double compose_sbs(double z_prevalence, double z_diversity, double z_connectivity) noexcept;

std::vector<SbsScore> sbs(const WordGraph& g, const std::map<std::string, std::uint64_t>& prevalence,
                          const std::vector<std::string>& keywords, std::size_t window = 0,
                          const ConnectivityOptions& options = {});

/// Scores for `keywords` given precomputed node scores.
std::vector<SbsScore> keyword_scores(const WordGraph& g, const NodeScores& nodes,
                                     const std::vector<std::string>& keywords, std::size_t window);

}  // namespace sbsflow
