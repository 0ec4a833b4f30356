#pragma once

#include "gme/graph.hpp"
#include "gme/softmax.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace gme {

/// Ground-truth class of every node, classes 0..C-1.
class LabeledDataset {
public:
  LabeledDataset() = default;
  /// Throws DomainError when fewer than two classes or an unused class index.
  LabeledDataset(std::vector<std::size_t> labels, std::vector<std::string> class_names = {});

  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  std::size_t num_classes() const noexcept { return class_names_.size(); }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t operator[](std::size_t u) const { return labels_[u]; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }

private:
  std::vector<std::size_t> labels_;
  std::vector<std::string> class_names_;
};

/// Reads `<node_id> <label>` lines for the nodes of `g`; class indices follow
/// first appearance of each label string. Throws FormatError if a graph
/// node has no label, a label names an unknown node, or a node repeats.
LabeledDataset load_labels(std::istream& in, const Graph& g);

struct Split {
  LabelSet train;
  std::vector<std::size_t> holdout;  // ascending node indices
};

/// round(fraction * n) training nodes drawn without replacement. Stratified
/// mode gives every class at least one training node and apportions the
/// rest by largest remainder. Throws DomainError if fraction is outside
/// (0, 1), the training budget is smaller than the class count (stratified),
/// or the holdout would be empty.
Split train_test_split(const LabeledDataset& labels, double fraction, std::uint64_t seed, bool stratified = true);

struct ClassCounts {
  std::size_t tp{0};
  std::size_t fp{0};
  std::size_t fn{0};
};

struct F1Report {
  double micro_f1{0.0};
  double macro_f1{0.0};
  std::vector<ClassCounts> per_class;
  std::size_t evaluated{0};
};

/// Micro-F1 from pooled counts; macro-F1 as the harmonic mean of the
/// class-averaged precision and recall. A zero denominator yields 0.
/// Throws DomainError for an empty holdout or out-of-range classes.
F1Report micro_macro_f1(std::span<const std::size_t> truth, std::span<const std::size_t> predicted,
                        std::span<const std::size_t> holdout, std::size_t num_classes);

/// `metric\tvalue` rows.
void write_f1_report_tsv(std::ostream& out, const F1Report& report);

struct PlantedPartition {
  Graph graph;
  LabeledDataset labels;
  /// expected degree below 1, so isolated nodes are likely
  bool sparse_warning{false};
  double expected_degree{0.0};
};

/// Independent edges with probability p_in inside a block and p_out across.
/// Node u belongs to block u / block_size. Throws DomainError for
/// probabilities outside [0, 1], p_in <= p_out or fewer than two blocks.
PlantedPartition planted_partition(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
                                   std::uint64_t seed);

/// p_out giving the requested expected degree for a fixed p_in.
double planted_p_out(std::size_t blocks, std::size_t block_size, double p_in, double mean_degree);

}  // namespace gme
