#include "gme/pipeline.hpp"

#include "gme/errors.hpp"
#include "gme/random.hpp"
#include "gme/semimetric.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace gme {

SamplerSpec parse_sampler(const std::string& text) {
  SamplerSpec spec;
  if (text == "edge") return spec;
  if (text == "expdist") {
    spec.kind = SamplerSpec::Kind::ExpDist;
    return spec;
  }
  if (text.rfind("walk:", 0) == 0) {
    const std::string digits = text.substr(5);
    std::size_t length = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), length);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || length < 1 || length > 16)
      throw std::invalid_argument("walk path length must be an integer in 1..16");
    spec.kind = SamplerSpec::Kind::Walk;
    spec.path_length = length;
    return spec;
  }
  throw std::invalid_argument("unknown sampler '" + text + "' (expected edge, walk:L or expdist)");
}

SampledGraph sample_graph(const Graph& g, const SamplerSpec& spec) {
  switch (spec.kind) {
    case SamplerSpec::Kind::Edge:
      return edge_sampling(g);
    case SamplerSpec::Kind::Walk:
      return random_walk_sampling(g, spec.path_length, spec.lengths);
    case SamplerSpec::Kind::ExpDist: {
      if (g.has_isolated_nodes()) throw DomainError("sampling: graph has isolated nodes");
      const SemiMetric d = resistance_distance(g);
      return spec.theta ? exp_distance_sampling(d, *spec.theta) : exp_distance_sampling(d);
    }
  }
  throw std::logic_error("unhandled sampler kind");
}

ModularityMatrix build_modularity(const Graph& g, const SamplerSpec& spec) {
  return modularity_matrix(sample_graph(g, spec));
}

SpectrumResult spectrum(const ModularityMatrix& q, std::size_t k_max, const EigenOptions& options) {
  const std::size_t count = std::min(q.size(), std::max<std::size_t>(k_max, 1));
  SpectrumResult out;
  out.pairs = top_k_eigen(q.matrix(), count, options);
  if (count >= 2) {
    const std::vector<double> values(out.pairs.values.data(), out.pairs.values.data() + count);
    out.selected_dim = select_dimension(values, k_max);
  }
  return out;
}

ClassifyResult run_classification(const Graph& g, const LabeledDataset& labels, const ClassifyConfig& config) {
  if (labels.size() != g.num_nodes()) throw DomainError("classification: label count does not match graph");
  ClassifyResult out;
  out.split = train_test_split(labels, config.train_fraction, derive_seed(config.seed, "split"), config.stratified);

  const ModularityMatrix q = build_modularity(g, config.sampler);
  EigenOptions eigen;
  eigen.seed = derive_seed(config.seed, "eigen");
  Embedding h;
  if (config.dim) {
    if (*config.dim < 1 || *config.dim > q.size()) throw DomainError("classification: dimension must be in 1..n");
    h = spectral_embedding(q, *config.dim, eigen);
  } else {
    const SpectrumResult s = spectrum(q, config.k_max, eigen);
    h = spectral_embedding(s.pairs, s.selected_dim);
  }
  out.dim = h.dim();

  ModularityMatrix recomposed = ModularityMatrix(reconstruct(h)).zero_diagonal();
  if (config.normalize) recomposed = recomposed.normalized();

  SoftmaxOptions softmax;
  softmax.theta = config.theta;
  softmax.seed = derive_seed(config.seed, "softmax");
  softmax.max_sweeps = config.max_sweeps;
  softmax.tol = config.tol;
  out.softmax = softmax_classify(recomposed, out.split.train, labels.num_classes(), softmax);
  out.predicted = hard_assign(out.softmax.h);
  out.report = micro_macro_f1(labels.labels(), out.predicted, out.split.holdout, labels.num_classes());
  return out;
}

}  // namespace gme
