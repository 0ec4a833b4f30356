// gme: generalized modularity embedding command-line tool.
//
// Exit codes: 0 success, 1 usage, 2 input format or domain, 3 numerical.

#include "gme/errors.hpp"
#include "gme/evaluation.hpp"
#include "gme/graph.hpp"
#include "gme/modularity.hpp"
#include "gme/pipeline.hpp"
#include "gme/random.hpp"
#include "gme/semimetric.hpp"
#include "gme/softmax.hpp"
#include "gme/spectral.hpp"
#include "gme/tsv.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace {

using namespace gme;

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string graph;
  std::string sampler{"edge"};
  std::optional<double> theta;
  bool exact_length{false};
  std::string dim{"auto"};
  std::size_t k_max{32};
  std::uint64_t seed{0};
  double tol{1e-12};
  double eigen_tol{1e-10};
  std::size_t max_sweeps{1000};
  std::optional<double> softmax_theta;
  bool normalize{false};
  double train_fraction{0.1};
  bool unstratified{false};
  std::size_t clusters{0};
  std::string labels;
  std::string truth;
  std::string predictions;
  std::string points;
  bool id_column{false};
  bool scaled{false};
  std::string output;
  std::string emit_spectrum;
  std::string id_map;
  std::string history;
  std::string dump_q;
};

/// Writes to the named file, or stdout for "" and "-".
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw FormatError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

void with_file(const std::string& path, const auto& write) {
  if (path.empty()) return;
  Sink sink(path);
  write(sink.stream());
}

SamplerSpec sampler_from(const Options& o) {
  SamplerSpec spec = parse_sampler(o.sampler);
  if (o.exact_length) spec.lengths = WalkLengths::Exact;
  spec.theta = o.theta;
  return spec;
}

EigenOptions eigen_from(const Options& o) {
  EigenOptions e;
  e.tol = o.eigen_tol;
  e.seed = derive_seed(o.seed, "eigen");
  return e;
}

std::optional<std::size_t> parse_dim(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < 1) throw std::invalid_argument("--dim must be 'auto' or a positive integer");
  return static_cast<std::size_t>(value);
}

Graph read_graph(const Options& o) {
  Graph g = load_edge_list_file(o.graph);
  if (g.num_nodes() == 0) throw FormatError("edge list '" + o.graph + "' contains no edges");
  with_file(o.id_map, [&](std::ostream& out) { write_id_map(out, g); });
  return g;
}

ModularityMatrix read_modularity(const Options& o, const Graph& g) {
  ModularityMatrix q = build_modularity(g, sampler_from(o));
  with_file(o.dump_q, [&](std::ostream& out) { write_matrix_tsv(out, q.matrix()); });
  return q;
}

std::vector<double> as_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

int cmd_spectrum(const Options& o) {
  const Graph g = read_graph(o);
  const ModularityMatrix q = read_modularity(o, g);
  const SpectrumResult s = spectrum(q, o.k_max, eigen_from(o));
  Sink sink(o.output);
  write_spectrum_tsv(sink.stream(), as_vector(s.pairs.values));
  sink.stream() << "# selected_dim\t" << s.selected_dim << '\n';
  return 0;
}

Embedding embed_graph(const Options& o, const ModularityMatrix& q) {
  const auto dim = parse_dim(o.dim);
  if (dim && *dim > q.size()) throw DomainError("--dim exceeds the node count");
  const SpectrumResult s = spectrum(q, dim ? std::max(*dim, std::min(o.k_max, q.size())) : o.k_max, eigen_from(o));
  with_file(o.emit_spectrum, [&](std::ostream& out) { write_spectrum_tsv(out, as_vector(s.pairs.values)); });
  return spectral_embedding(s.pairs, dim.value_or(s.selected_dim));
}

int cmd_embed(const Options& o) {
  const Graph g = read_graph(o);
  const ModularityMatrix q = read_modularity(o, g);
  const Embedding h = embed_graph(o, q);
  Sink sink(o.output);
  write_embedding_tsv(sink.stream(), h.h, g.ids());
  return 0;
}

SoftmaxOptions softmax_from(const Options& o) {
  SoftmaxOptions s;
  s.theta = o.softmax_theta;
  s.seed = derive_seed(o.seed, "softmax");
  s.max_sweeps = o.max_sweeps;
  s.tol = o.tol;
  return s;
}

int cmd_cluster(const Options& o) {
  const Graph g = read_graph(o);
  ModularityMatrix q = read_modularity(o, g).zero_diagonal();
  if (o.normalize) q = q.normalized();
  const StochasticEmbedding result = softmax_cluster(q, o.clusters, softmax_from(o));
  const auto assignment = hard_assign(result.h);
  with_file(o.history, [&](std::ostream& out) { write_history_tsv(out, result.history); });

  Sink sink(o.output);
  auto& out = sink.stream();
  out << "node\tcluster";
  for (std::size_t k = 0; k < o.clusters; ++k) out << "\tp_" << (k + 1);
  out << '\n';
  for (NodeIndex u = 0; u < g.num_nodes(); ++u) {
    out << g.id(u) << '\t' << assignment[u];
    for (Eigen::Index k = 0; k < result.h.cols(); ++k) out << '\t' << format_double(result.h(u, k));
    out << '\n';
  }
  std::cerr << "sweeps=" << result.sweeps << " converged=" << (result.converged ? "true" : "false") << '\n';
  return 0;
}

int cmd_classify(const Options& o) {
  const Graph g = read_graph(o);
  std::ifstream label_file(o.labels);
  if (!label_file) throw FormatError("cannot open label file '" + o.labels + "'");
  const LabeledDataset labels = load_labels(label_file, g);

  ClassifyConfig config;
  config.sampler = sampler_from(o);
  config.dim = parse_dim(o.dim);
  config.k_max = o.k_max;
  config.train_fraction = o.train_fraction;
  config.stratified = !o.unstratified;
  config.normalize = o.normalize;
  config.seed = o.seed;
  config.theta = o.softmax_theta;
  config.max_sweeps = o.max_sweeps;
  config.tol = o.tol;
  const ClassifyResult r = run_classification(g, labels, config);

  with_file(o.history, [&](std::ostream& out) { write_history_tsv(out, r.softmax.history); });
  with_file(o.predictions, [&](std::ostream& out) {
    for (std::size_t u : r.split.holdout) out << g.id(u) << '\t' << labels.class_names()[r.predicted[u]] << '\n';
  });

  Sink sink(o.output);
  auto& out = sink.stream();
  write_f1_report_tsv(out, r.report);
  out << "dim\t" << r.dim << '\n';
  out << "train_nodes\t" << r.split.train.size() << '\n';
  out << "sweeps\t" << r.softmax.sweeps << '\n';
  out << "converged\t" << (r.softmax.converged ? "true" : "false") << '\n';
  return 0;
}

int cmd_eval(const Options& o) {
  auto read_pairs = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_label_pairs(in);
  };
  const auto truth_pairs = read_pairs(o.truth);
  const auto predicted_pairs = read_pairs(o.predictions);

  std::unordered_map<std::string, std::size_t> node_index, class_index;
  std::vector<std::size_t> truth;
  auto class_of = [&](const std::string& label) {
    return class_index.try_emplace(label, class_index.size()).first->second;
  };
  for (const auto& [id, label] : truth_pairs) {
    if (!node_index.try_emplace(id, truth.size()).second) throw FormatError("truth file: node '" + id + "' repeats");
    truth.push_back(class_of(label));
  }
  std::vector<std::size_t> predicted(truth.size(), 0);
  std::vector<std::size_t> holdout;
  std::vector<bool> seen(truth.size(), false);
  for (const auto& [id, label] : predicted_pairs) {
    const auto it = node_index.find(id);
    if (it == node_index.end()) throw FormatError("prediction for unknown node '" + id + "'");
    if (seen[it->second]) throw FormatError("prediction file: node '" + id + "' repeats");
    seen[it->second] = true;
    predicted[it->second] = class_of(label);
    holdout.push_back(it->second);
  }
  std::sort(holdout.begin(), holdout.end());
  const F1Report report = micro_macro_f1(truth, predicted, holdout, class_index.size());
  Sink sink(o.output);
  write_f1_report_tsv(sink.stream(), report);
  return 0;
}

int cmd_pca(const Options& o) {
  std::ifstream in(o.points);
  if (!in) throw FormatError("cannot open data file '" + o.points + "'");
  const DataTable table = read_data_table(in, o.id_column);
  const auto dim = parse_dim(o.dim);
  const std::size_t k = dim.value_or(static_cast<std::size_t>(std::min(table.values.rows(), table.values.cols())));
  EigenOptions eigen = eigen_from(o);
  eigen.tol = std::min(eigen.tol, 1e-13);
  const PcaResult pca = pca_embedding(DataMatrix{table.values}, k, eigen);
  with_file(o.emit_spectrum, [&](std::ostream& out) { write_spectrum_tsv(out, as_vector(pca.values)); });
  Sink sink(o.output);
  write_embedding_tsv(sink.stream(), o.scaled ? pca.scores() : pca.embedding.h, table.ids);
  return 0;
}

int cmd_eigenmap(const Options& o) {
  const Graph g = read_graph(o);
  const auto dim = parse_dim(o.dim);
  if (!dim) throw std::invalid_argument("eigenmap needs an explicit --dim");
  const Embedding h = eigenmap_embedding(g, *dim);
  Sink sink(o.output);
  write_embedding_tsv(sink.stream(), h.h, g.ids());
  return 0;
}

void add_sampler_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--sampler", o.sampler, "edge | walk:L | expdist")->capture_default_str();
  cmd->add_option("--theta", o.theta, "expdist exponent (default -1e-3 / max distance)");
  cmd->add_flag("--exact-length", o.exact_length, "walk sampler: exactly L steps instead of the 1..L mixture");
  cmd->add_option("--dump-q", o.dump_q, "write the modularity matrix as TSV");
}

void add_graph_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("-g,--graph", o.graph, "edge list file")->required();
  cmd->add_option("--id-map", o.id_map, "write <external_id>\\t<index> lines");
}

void add_softmax_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--softmax-theta", o.softmax_theta, "inverse temperature (default n^2)");
  cmd->add_option("--max-sweeps", o.max_sweeps)->capture_default_str();
  cmd->add_option("--tol", o.tol, "relative objective gain that ends the iteration")->capture_default_str();
  cmd->add_flag("--normalize", o.normalize, "divide the input matrix by its largest magnitude");
  cmd->add_option("--history", o.history, "write the sweep\\tobjective history");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized modularity embedding and softmax clustering"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--seed", o.seed, "root seed for every random stage")->capture_default_str();
  app.add_option("-o,--output", o.output, "output file (default stdout)");
  app.add_option("--eigen-tol", o.eigen_tol, "relative eigen-residual target")->capture_default_str();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "leading eigenvalues of Q and the spectral-gap dimension");
  add_graph_flags(spectrum_cmd, o);
  add_sampler_flags(spectrum_cmd, o);
  spectrum_cmd->add_option("--k-max", o.k_max, "number of eigenvalues computed")->capture_default_str();

  auto* embed_cmd = app.add_subcommand("embed", "modularity embedding from the top eigenvectors of Q");
  add_graph_flags(embed_cmd, o);
  add_sampler_flags(embed_cmd, o);
  embed_cmd->add_option("--dim", o.dim, "auto | K")->capture_default_str();
  embed_cmd->add_option("--k-max", o.k_max, "eigenvalues scanned by --dim auto")->capture_default_str();
  embed_cmd->add_option("--emit-spectrum", o.emit_spectrum, "write the k\\tlambda spectrum");

  auto* cluster_cmd = app.add_subcommand("cluster", "softmax clustering of Q");
  add_graph_flags(cluster_cmd, o);
  add_sampler_flags(cluster_cmd, o);
  add_softmax_flags(cluster_cmd, o);
  cluster_cmd->add_option("-k,--clusters", o.clusters, "number of clusters")->required()->check(CLI::Range(2, 1 << 20));

  auto* classify_cmd = app.add_subcommand("classify", "embed, recompose Q' = HH^T, label-clamped softmax, F1");
  add_graph_flags(classify_cmd, o);
  add_sampler_flags(classify_cmd, o);
  add_softmax_flags(classify_cmd, o);
  classify_cmd->add_option("--labels", o.labels, "<node_id> <label> file")->required();
  classify_cmd->add_option("--dim", o.dim, "auto | K")->capture_default_str();
  classify_cmd->add_option("--k-max", o.k_max, "eigenvalues scanned by --dim auto")->capture_default_str();
  classify_cmd->add_option("--train-fraction", o.train_fraction)->capture_default_str();
  classify_cmd->add_flag("--unstratified", o.unstratified, "plain random training sample");
  classify_cmd->add_option("--predictions", o.predictions, "write <node_id>\\t<label> for the holdout");

  auto* eval_cmd = app.add_subcommand("eval", "micro/macro F1 of a prediction file");
  eval_cmd->add_option("--truth", o.truth, "<node_id> <label> ground truth")->required();
  eval_cmd->add_option("--predictions", o.predictions, "<node_id> <label> predictions")->required();

  auto* pca_cmd = app.add_subcommand("pca", "modularity embedding of data points (centered Gram matrix)");
  pca_cmd->add_option("--points", o.points, "numeric TSV/CSV, one point per row")->required();
  pca_cmd->add_flag("--id-column", o.id_column, "first field of each row is an ID");
  pca_cmd->add_option("--dim", o.dim, "auto (= min(n, p)) | K")->capture_default_str();
  pca_cmd->add_flag("--scaled", o.scaled, "scale columns by sqrt(lambda), giving PCA scores");
  pca_cmd->add_option("--emit-spectrum", o.emit_spectrum, "write the k\\tlambda spectrum");

  auto* eigenmap_cmd = app.add_subcommand("eigenmap", "Laplacian eigenmap embedding");
  add_graph_flags(eigenmap_cmd, o);
  eigenmap_cmd->add_option("--dim", o.dim, "K")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*spectrum_cmd) return cmd_spectrum(o);
    if (*embed_cmd) return cmd_embed(o);
    if (*cluster_cmd) return cmd_cluster(o);
    if (*classify_cmd) return cmd_classify(o);
    if (*eval_cmd) return cmd_eval(o);
    if (*pca_cmd) return cmd_pca(o);
    if (*eigenmap_cmd) return cmd_eigenmap(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "gme: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "gme: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    std::cerr << "gme: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "gme: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
