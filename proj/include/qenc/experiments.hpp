#pragma once

#include "qenc/qift.hpp"
#include "qenc/statevec.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qenc::experiments {

enum class EncoderId { probability_loading, amplitude, phase, qift };

std::string_view to_string(EncoderId id);
std::optional<EncoderId> parse_encoder(std::string_view name);

/// Sign vectors in {-1, +1}^N labelled by their parity (product of entries).
struct LabeledDataset {
  std::vector<Eigen::VectorXd> vectors;
  std::vector<int> labels;
  std::uint64_t seed = 0;
};

/// Full enumeration when `count` is empty, otherwise `count` distinct
/// vectors drawn without replacement. Enumeration order follows the basis
/// index: bit j (most significant first) set means component j is -1.
LabeledDataset gen_parity_dataset(int n_components, std::optional<std::size_t> count,
                                  std::uint64_t seed);

/// Couplings and strengths for the dynamical encoder. Features become the
/// field strengths x of one qubit each.
struct QiftParams {
  double mu = 1.0;
  double tau = 0.1;
  std::string topology = "ring";  // "ring", "complete" or "custom"
  Eigen::MatrixXd couplings;      // used when topology == "custom"

  [[nodiscard]] Eigen::MatrixXd couplings_for(int n_qubits) const;
};

/// Phase encoding of a data row uses p_i = v_i²/‖v‖² and φ_i = v_i.
std::vector<StateVector<>> encode_dataset(const LabeledDataset& ds, EncoderId encoder,
                                          const std::optional<QiftParams>& qift = std::nullopt);

/// K_ab = |⟨ψ_a|ψ_b⟩|².
struct GramMatrix {
  Eigen::MatrixXd entries;
  EncoderId encoder = EncoderId::amplitude;
};

GramMatrix fidelity_gram(std::span<const StateVector<>> states, EncoderId encoder);

struct LooResult {
  double accuracy = 0;
  std::vector<int> predictions;
  bool single_class = false;  // every label equal; accuracy is trivially 1
};

/// Leave-one-out 1-nearest-neighbour with similarity K. Candidates within
/// `tie_tol` of the best similarity are tied and resolved to the lowest
/// sample index. A row where every candidate ties carries no information;
/// it predicts the label of sample 0.
LooResult nn_classify_loo(const GramMatrix& gram, std::span<const int> labels, double tie_tol = 1e-12);

/// min over cross-class pairs of √(1 - K_ab).
double distinguishability(std::span<const StateVector<>> states, std::span<const int> labels);

// ---------------------------------------------------------------------------
// Config-driven runs.

enum class ErrorKind {
  malformed_config,
  unknown_key,
  unknown_experiment,
  unknown_encoder,
  invalid_params,
  unwritable_output,
};

std::string_view to_string(ErrorKind kind);

class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

enum class ExperimentKind { parity, curvature_scan, resonance, interference_audit };

std::string_view to_string(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::parity;
  int n_features = 4;
  std::optional<std::size_t> count;  // empty means "all" where that applies
  std::uint64_t seed = 0;
  std::vector<EncoderId> encoders{EncoderId::probability_loading, EncoderId::amplitude};
  std::optional<QiftParams> qift;
  std::filesystem::path output_dir = "out";
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// ExperimentError with a kind naming the failure.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& file);
nlohmann::json to_json(const ExperimentConfig& cfg);

struct RunOptions {
  double resonance_tolerance = 1e-3;
};

/// One CSV file of an experiment.
struct CsvTable {
  std::string name;  // file name inside output_dir
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::string str() const;
};

struct ExperimentReport {
  nlohmann::json config;
  nlohmann::json results;
  nlohmann::json provenance;
  std::vector<CsvTable> tables;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Computes the experiment without touching the filesystem.
ExperimentReport compute_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Writes report.json and every table into `dir`. Files are staged under
/// temporary names and renamed only once all of them are written.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

/// compute_experiment followed by write_report into cfg.output_dir.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

std::string_view tool_version();

}  // namespace qenc::experiments
