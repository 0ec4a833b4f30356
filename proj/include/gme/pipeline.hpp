#pragma once

#include "gme/eigen_solver.hpp"
#include "gme/evaluation.hpp"
#include "gme/graph.hpp"
#include "gme/modularity.hpp"
#include "gme/sampling.hpp"
#include "gme/softmax.hpp"
#include "gme/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace gme {

struct SamplerSpec {
  enum class Kind { Edge, Walk, ExpDist };
  Kind kind{Kind::Edge};
  std::size_t path_length{1};
  WalkLengths lengths{WalkLengths::Mixture};
  /// expdist only; default_exp_theta when unset
  std::optional<double> theta;
};

/// "edge", "walk:L" (1 <= L <= 16) or "expdist".
/// Throws std::invalid_argument for anything else.
SamplerSpec parse_sampler(const std::string& text);

/// The expdist sampler over a graph uses the resistance distance.
SampledGraph sample_graph(const Graph& g, const SamplerSpec& spec);

ModularityMatrix build_modularity(const Graph& g, const SamplerSpec& spec);

struct SpectrumResult {
  EigenPairs pairs;  // top min(n, k_max) pairs
  std::size_t selected_dim{1};
};

/// Top min(n, k_max) eigenpairs and the spectral-gap dimension among them.
SpectrumResult spectrum(const ModularityMatrix& q, std::size_t k_max, const EigenOptions& options);

struct ClassifyConfig {
  SamplerSpec sampler;
  /// embedding dimension; spectral gap over k_max values when unset
  std::optional<std::size_t> dim;
  std::size_t k_max{32};
  double train_fraction{0.1};
  bool stratified{true};
  /// divide Q' by max |q'| before the softmax iteration
  bool normalize{false};
  std::uint64_t seed{0};
  std::optional<double> theta;
  std::size_t max_sweeps{1000};
  double tol{1e-12};
};

struct ClassifyResult {
  Split split;
  std::size_t dim{0};
  StochasticEmbedding softmax;
  std::vector<std::size_t> predicted;
  F1Report report;
};

/// Q -> spectral embedding H -> Q' = H H^T with zero diagonal ->
/// label-clamped softmax -> argmax -> F1 on the holdout.
ClassifyResult run_classification(const Graph& g, const LabeledDataset& labels, const ClassifyConfig& config);

}  // namespace gme
