#include "sbsflow/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "sbsflow/error.hpp"
#include "sbsflow/parallel.hpp"

namespace sbsflow {

WordGraph WordGraph::from_edges(std::vector<std::string> labels, const std::vector<Edge>& edges) {
  const std::size_t n = labels.size();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> adj(n);
  for (const auto& e : edges) {
    if (e.i >= n || e.j >= n) throw InputError("edge endpoint out of range");
    if (e.i == e.j) throw InputError("self-loop on node " + std::to_string(e.i));
    if (e.weight == 0) throw InputError("edge weight must be positive");
    adj[e.i].emplace_back(e.j, e.weight);
    adj[e.j].emplace_back(e.i, e.weight);
  }
  WordGraph g;
  g.labels_ = std::move(labels);
  g.offsets_.assign(1, 0);
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!g.neighbors_.empty() && g.neighbors_.size() > g.offsets_.back() && g.neighbors_.back() == row[k].first) {
        g.weights_.back() += row[k].second;
        continue;
      }
      g.neighbors_.push_back(row[k].first);
      g.weights_.push_back(row[k].second);
    }
    g.offsets_.push_back(g.neighbors_.size());
  }
  return g;
}

std::optional<std::size_t> WordGraph::find(const std::string& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<Edge> WordGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < node_count(); ++i) {
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      if (neighbors_[k] > i) out.push_back({static_cast<std::uint32_t>(i), neighbors_[k], weights_[k]});
    }
  }
  return out;
}

WordGraph build_graph(const std::vector<CooccurrenceRecord>& records,
                      const std::map<std::string, std::uint64_t>& prevalence, std::uint64_t min_edge_weight) {
  std::vector<std::string> labels;
  for (const auto& r : records) {
    if (r.count < min_edge_weight) continue;
    labels.push_back(r.word_a);
    labels.push_back(r.word_b);
  }
  for (const auto& [token, count] : prevalence) {
    if (count > 0) labels.push_back(token);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  auto index = [&](const std::string& s) {
    return static_cast<std::uint32_t>(std::lower_bound(labels.begin(), labels.end(), s) - labels.begin());
  };
  std::vector<Edge> edges;
  for (const auto& r : records) {
    if (r.count < min_edge_weight || r.word_a == r.word_b) continue;
    auto a = index(r.word_a), b = index(r.word_b);
    edges.push_back({std::min(a, b), std::max(a, b), r.count});
  }
  return WordGraph::from_edges(std::move(labels), edges);
}

std::map<std::string, std::uint64_t> prevalence(const std::vector<TokenSequence>& sequences) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& seq : sequences) {
    for (const auto& t : seq.tokens) ++out[t];
  }
  return out;
}

double diversity(const WordGraph& g, std::size_t i) {
  const std::size_t n = g.node_count();
  if (n < 2) return 0.0;
  const double top = static_cast<double>(n - 1);
  double sum = 0.0;
  for (const auto* j = g.neighbors_begin(i); j != g.neighbors_end(i); ++j) {
    sum += std::log10(top / static_cast<double>(g.degree(*j)));
  }
  return sum;
}

double diversity(const WordGraph& g, const std::string& label) {
  auto i = g.find(label);
  if (!i) throw InputError("'" + label + "' is not a node of the graph");
  return diversity(g, *i);
}

std::vector<double> diversity_all(const WordGraph& g, unsigned workers) {
  std::vector<double> out(g.node_count());
  parallel_for(out.size(), workers, [&](std::size_t i) { out[i] = diversity(g, i); });
  return out;
}

namespace {

// Single-source stage of Brandes' algorithm with Dijkstra, adding the
// dependencies of `source` into `acc`.
class BrandesWorker {
 public:
  BrandesWorker(const WordGraph& g, const std::vector<double>& lengths, const std::vector<std::size_t>& offsets,
                double tolerance)
      : g_(g),
        lengths_(lengths),
        offsets_(offsets),
        tol_(tolerance),
        dist_(g.node_count()),
        sigma_(g.node_count()),
        delta_(g.node_count()),
        pred_count_(g.node_count()),
        preds_(offsets.back()),
        settled_(g.node_count()) {}

  void run(std::uint32_t source, std::vector<double>& acc) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::fill(dist_.begin(), dist_.end(), inf);
    std::fill(sigma_.begin(), sigma_.end(), 0.0);
    std::fill(delta_.begin(), delta_.end(), 0.0);
    std::fill(pred_count_.begin(), pred_count_.end(), 0u);
    std::fill(settled_.begin(), settled_.end(), 0);
    order_.clear();

    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist_[source] = 0.0;
    sigma_[source] = 1.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (settled_[u] || d > dist_[u]) continue;
      settled_[u] = 1;
      order_.push_back(u);
      const auto* nb = g_.neighbors_begin(u);
      const std::size_t row = offsets_[u];
      const std::size_t deg = g_.degree(u);
      for (std::size_t k = 0; k < deg; ++k) {
        const std::uint32_t v = nb[k];
        if (settled_[v]) continue;
        const double nd = d + lengths_[row + k];
        const double cur = dist_[v];
        if (cur != inf && std::abs(nd - cur) <= tol_ * std::max(nd, cur)) {
          sigma_[v] += sigma_[u];
          preds_[offsets_[v] + pred_count_[v]++] = u;
        } else if (nd < cur) {
          dist_[v] = nd;
          sigma_[v] = sigma_[u];
          pred_count_[v] = 0;
          preds_[offsets_[v] + pred_count_[v]++] = u;
          heap.emplace(nd, v);
        }
      }
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const std::uint32_t w = *it;
      const double coeff = (1.0 + delta_[w]) / sigma_[w];
      for (std::uint32_t p = 0; p < pred_count_[w]; ++p) {
        const std::uint32_t v = preds_[offsets_[w] + p];
        delta_[v] += sigma_[v] * coeff;
      }
      if (w != source) acc[w] += delta_[w];
    }
  }

 private:
  const WordGraph& g_;
  const std::vector<double>& lengths_;
  const std::vector<std::size_t>& offsets_;
  double tol_;
  std::vector<double> dist_;
  std::vector<double> sigma_;
  std::vector<double> delta_;
  std::vector<std::uint32_t> pred_count_;
  std::vector<std::uint32_t> preds_;
  std::vector<char> settled_;
  std::vector<std::uint32_t> order_;
};

}  // namespace

std::vector<double> connectivity(const WordGraph& g, const ConnectivityOptions& options) {
  const std::size_t n = g.node_count();
  std::vector<double> bc(n, 0.0);
  if (n < 3) return bc;

  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + g.degree(i);
  std::vector<double> lengths(offsets.back());
  for (std::size_t i = 0; i < n; ++i) {
    const auto* w = g.weights_begin(i);
    for (std::size_t k = 0; k < g.degree(i); ++k) {
      const double weight = static_cast<double>(w[k]);
      lengths[offsets[i] + k] = options.length == EdgeLength::Inverse ? 1.0 / weight : weight;
    }
  }

  // Chunking depends only on n, so the reduction order (and hence every bit
  // of the result) is independent of the worker count.
  const std::size_t chunk = std::max<std::size_t>(32, (n + 63) / 64);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<std::vector<double>> partial(chunks);
  parallel_for(chunks, options.workers, [&](std::size_t c) {
    std::vector<double> acc(n, 0.0);
    BrandesWorker worker(g, lengths, offsets, options.tie_tolerance);
    const std::size_t end = std::min(n, (c + 1) * chunk);
    for (std::size_t s = c * chunk; s < end; ++s) worker.run(static_cast<std::uint32_t>(s), acc);
    partial[c] = std::move(acc);
  });
  for (const auto& acc : partial) {
    for (std::size_t i = 0; i < n; ++i) bc[i] += acc[i];
  }
  // Each unordered pair was counted from both endpoints.
  for (auto& v : bc) v *= 0.5;
  return bc;
}

Moments moments(const std::vector<double>& values) {
  Moments m;
  if (values.empty()) return m;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  m.constant = *lo == *hi;
  if (m.constant) return m;
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean) * (v - m.mean);
  m.sd = std::sqrt(ss / static_cast<double>(values.size()));
  return m;
}

double zscore(double x, const Moments& m) noexcept {
  if (m.constant || m.sd == 0.0) return 0.0;
  return (x - m.mean) / m.sd;
}

std::vector<double> standardize(const std::vector<double>& values) {
  const Moments m = moments(values);
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(zscore(v, m));
  return out;
}

std::map<std::string, double> standardize(const std::map<std::string, double>& values) {
  std::vector<double> raw;
  raw.reserve(values.size());
  for (const auto& [k, v] : values) raw.push_back(v);
  auto z = standardize(raw);
  std::map<std::string, double> out;
  std::size_t i = 0;
  for (const auto& [k, v] : values) out.emplace(k, z[i++]);
  return out;
}

double compose_sbs(double z_prevalence, double z_diversity, double z_connectivity) noexcept {
  return (z_prevalence + z_diversity) + z_connectivity;
}

NodeScores score_all_nodes(const WordGraph& g, const std::map<std::string, std::uint64_t>& prevalence,
                           const ConnectivityOptions& options) {
  NodeScores s;
  const std::size_t n = g.node_count();
  s.prevalence.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = prevalence.find(g.label(i));
    s.prevalence[i] = it == prevalence.end() ? 0.0 : static_cast<double>(it->second);
  }
  s.diversity = diversity_all(g, options.workers);
  s.connectivity = connectivity(g, options);
  s.prevalence_moments = moments(s.prevalence);
  s.diversity_moments = moments(s.diversity);
  s.connectivity_moments = moments(s.connectivity);
  s.z_prevalence = standardize(s.prevalence);
  s.z_diversity = standardize(s.diversity);
  s.z_connectivity = standardize(s.connectivity);
  s.sbs.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.sbs[i] = compose_sbs(s.z_prevalence[i], s.z_diversity[i], s.z_connectivity[i]);
  return s;
}

std::vector<SbsScore> keyword_scores(const WordGraph& g, const NodeScores& nodes,
                                     const std::vector<std::string>& keywords, std::size_t window) {
  std::vector<SbsScore> out;
  out.reserve(keywords.size());
  for (const auto& k : keywords) {
    SbsScore s;
    s.keyword = k;
    s.window = window;
    if (auto i = g.find(k)) {
      s.prevalence_raw = static_cast<std::uint64_t>(nodes.prevalence[*i]);
      s.diversity_raw = nodes.diversity[*i];
      s.connectivity_raw = nodes.connectivity[*i];
      s.z_prevalence = nodes.z_prevalence[*i];
      s.z_diversity = nodes.z_diversity[*i];
      s.z_connectivity = nodes.z_connectivity[*i];
    } else {
      s.z_prevalence = zscore(0.0, nodes.prevalence_moments);
      s.z_diversity = zscore(0.0, nodes.diversity_moments);
      s.z_connectivity = zscore(0.0, nodes.connectivity_moments);
    }
    s.sbs = compose_sbs(s.z_prevalence, s.z_diversity, s.z_connectivity);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SbsScore> sbs(const WordGraph& g, const std::map<std::string, std::uint64_t>& prevalence,
                          const std::vector<std::string>& keywords, std::size_t window,
                          const ConnectivityOptions& options) {
  return keyword_scores(g, score_all_nodes(g, prevalence, options), keywords, window);
}

}  // namespace sbsflow
