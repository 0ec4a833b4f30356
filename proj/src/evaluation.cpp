#include "gme/evaluation.hpp"

#include "gme/errors.hpp"
#include "gme/random.hpp"
#include "gme/tsv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_map>

namespace gme {

LabeledDataset::LabeledDataset(std::vector<std::size_t> labels, std::vector<std::string> class_names)
    : labels_(std::move(labels)), class_names_(std::move(class_names)) {
  const std::size_t classes = labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end()) + 1;
  if (class_names_.empty())
    for (std::size_t c = 0; c < classes; ++c) class_names_.push_back(std::to_string(c));
  if (class_names_.size() < classes) throw DomainError("labeled dataset: more classes than class names");
  if (class_names_.size() < 2) throw DomainError("labeled dataset: need at least two classes");
  std::vector<bool> used(class_names_.size(), false);
  for (std::size_t c : labels_) used[c] = true;
  for (std::size_t c = 0; c < used.size(); ++c)
    if (!used[c]) throw DomainError("labeled dataset: class '" + class_names_[c] + "' has no nodes");
}

LabeledDataset load_labels(std::istream& in, const Graph& g) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> labels(g.num_nodes(), unset);
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> class_index;
  for (const auto& [id, label] : read_label_pairs(in)) {
    const NodeIndex u = g.index_of(id);
    if (u == g.num_nodes()) throw FormatError("label file: unknown node '" + id + "'");
    if (labels[u] != unset) throw FormatError("label file: node '" + id + "' labeled twice");
    auto [it, inserted] = class_index.try_emplace(label, names.size());
    if (inserted) names.push_back(label);
    labels[u] = it->second;
  }
  for (NodeIndex u = 0; u < g.num_nodes(); ++u)
    if (labels[u] == unset) throw FormatError("label file: node '" + g.id(u) + "' has no label");
  try {
    return LabeledDataset(std::move(labels), std::move(names));
  } catch (const DomainError& e) {
    throw FormatError(std::string("label file: ") + e.what());
  }
}

namespace {

void shuffle(std::vector<std::size_t>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
}

}  // namespace

Split train_test_split(const LabeledDataset& labels, double fraction, std::uint64_t seed, bool stratified) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("train/test split: fraction must be in (0, 1)");
  const std::size_t n = labels.size();
  const std::size_t classes = labels.num_classes();
  const auto budget = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  if (budget >= n) throw DomainError("train/test split: holdout would be empty");
  if (budget == 0) throw DomainError("train/test split: fraction selects no training nodes");

  Rng rng(seed);
  std::vector<bool> chosen(n, false);
  if (stratified) {
    if (budget < classes) throw DomainError("train/test split: fraction too small to represent every class");
    std::vector<std::vector<std::size_t>> members(classes);
    for (std::size_t u = 0; u < n; ++u) members[labels[u]].push_back(u);

    // at least one per class, the rest by largest remainder of the quota,
    // ties to the lower class index
    std::vector<std::size_t> take(classes);
    std::vector<double> remainder(classes);
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      const double quota = fraction * static_cast<double>(members[c].size());
      take[c] = std::min(members[c].size(), std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(quota))));
      remainder[c] = quota - static_cast<double>(take[c]);
      assigned += take[c];
    }
    std::vector<std::size_t> order(classes);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    while (assigned < budget) {
      bool progressed = false;
      for (std::size_t c : order) {
        if (assigned == budget) break;
        if (take[c] < members[c].size()) {
          ++take[c];
          ++assigned;
          progressed = true;
        }
      }
      if (!progressed) break;
    }
    // minimum-one rule can overshoot the budget on tiny fractions; trim the
    // classes with the most negative remainder while keeping one each
    for (auto it = order.rbegin(); assigned > budget && it != order.rend(); ++it) {
      while (assigned > budget && take[*it] > 1) {
        --take[*it];
        --assigned;
      }
    }
    for (std::size_t c = 0; c < classes; ++c) {
      shuffle(members[c], rng);
      for (std::size_t i = 0; i < take[c]; ++i) chosen[members[c][i]] = true;
    }
  } else {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    shuffle(all, rng);
    for (std::size_t i = 0; i < budget; ++i) chosen[all[i]] = true;
  }

  std::map<std::size_t, std::size_t> train;
  Split split;
  for (std::size_t u = 0; u < n; ++u) {
    if (chosen[u])
      train.emplace(u, labels[u]);
    else
      split.holdout.push_back(u);
  }
  split.train = LabelSet(std::move(train), classes);
  return split;
}

F1Report micro_macro_f1(std::span<const std::size_t> truth, std::span<const std::size_t> predicted,
                        std::span<const std::size_t> holdout, std::size_t num_classes) {
  if (holdout.empty()) throw DomainError("F1: empty holdout");
  if (truth.size() != predicted.size()) throw DomainError("F1: truth and prediction sizes differ");
  F1Report report;
  report.per_class.assign(num_classes, {});
  for (std::size_t u : holdout) {
    if (u >= truth.size()) throw DomainError("F1: holdout node out of range");
    const std::size_t t = truth[u];
    const std::size_t p = predicted[u];
    if (t >= num_classes || p >= num_classes) throw DomainError("F1: class index out of range");
    if (t == p) {
      ++report.per_class[t].tp;
    } else {
      ++report.per_class[p].fp;
      ++report.per_class[t].fn;
    }
  }
  report.evaluated = holdout.size();

  auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
  auto harmonic = [](double a, double b) { return a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0; };

  double tp = 0, tp_fp = 0, tp_fn = 0, precision_sum = 0, recall_sum = 0;
  for (const ClassCounts& c : report.per_class) {
    tp += static_cast<double>(c.tp);
    tp_fp += static_cast<double>(c.tp + c.fp);
    tp_fn += static_cast<double>(c.tp + c.fn);
    precision_sum += ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
    recall_sum += ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
  }
  const double classes = static_cast<double>(num_classes);
  report.micro_f1 = harmonic(ratio(tp, tp_fp), ratio(tp, tp_fn));
  report.macro_f1 = num_classes == 0 ? 0.0 : harmonic(precision_sum / classes, recall_sum / classes);
  return report;
}

void write_f1_report_tsv(std::ostream& out, const F1Report& report) {
  out << "metric\tvalue\n";
  out << "micro_f1\t" << format_double(report.micro_f1) << '\n';
  out << "macro_f1\t" << format_double(report.macro_f1) << '\n';
  out << "evaluated\t" << report.evaluated << '\n';
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& counts = report.per_class[c];
    out << "tp_" << c << '\t' << counts.tp << '\n';
    out << "fp_" << c << '\t' << counts.fp << '\n';
    out << "fn_" << c << '\t' << counts.fn << '\n';
  }
}

PlantedPartition planted_partition(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
                                   std::uint64_t seed) {
  auto valid = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!valid(p_in) || !valid(p_out)) throw DomainError("planted partition: probabilities must be in [0, 1]");
  if (!(p_in > p_out)) throw DomainError("planted partition: p_in must exceed p_out");
  if (blocks < 2 || block_size < 1) throw DomainError("planted partition: need >= 2 non-empty blocks");

  const std::size_t n = blocks * block_size;
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = u + 1; w < n; ++w) {
      const double p = u / block_size == w / block_size ? p_in : p_out;
      if (rng.bernoulli(p)) edges.push_back({u, w, 1.0});
    }
  }
  std::vector<std::size_t> truth(n);
  for (std::size_t u = 0; u < n; ++u) truth[u] = u / block_size;

  PlantedPartition out{Graph(n, edges), LabeledDataset(std::move(truth)), false, 0.0};
  out.expected_degree = p_in * static_cast<double>(block_size - 1) +
                        p_out * static_cast<double>((blocks - 1) * block_size);
  out.sparse_warning = out.expected_degree < 1.0;
  return out;
}

double planted_p_out(std::size_t blocks, std::size_t block_size, double p_in, double mean_degree) {
  const double inside = p_in * static_cast<double>(block_size - 1);
  return (mean_degree - inside) / static_cast<double>((blocks - 1) * block_size);
}

}  // namespace gme
