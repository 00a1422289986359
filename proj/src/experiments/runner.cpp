#include "qenc/csv.hpp"
#include "qenc/experiments.hpp"
#include "qenc/interference.hpp"
#include "qenc/random.hpp"
#include "qenc/spectral.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <numbers>

namespace qenc::experiments {

using nlohmann::json;

#ifndef QENC_VERSION
#define QENC_VERSION "0.0.0"
#endif

std::string_view tool_version() { return QENC_VERSION; }

std::string CsvTable::str() const { return csv::write(header, rows); }

json ExperimentReport::to_json() const {
  return json{{"config", config}, {"results", results}, {"provenance", provenance}};
}

namespace {

using csv::format_double;

QiftParams qift_or_default(const ExperimentConfig& cfg) { return cfg.qift.value_or(QiftParams{}); }

HamiltonianSpec<> seeded_spec(const ExperimentConfig& cfg, Rng& rng) {
  const auto q = qift_or_default(cfg);
  HamiltonianSpec<> spec;
  spec.x = random_uniform<double>(cfg.n_features, -std::numbers::pi, std::numbers::pi, rng);
  spec.couplings = q.couplings_for(cfg.n_features);
  spec.mu = q.mu;
  spec.tau = q.tau;
  return spec;
}

json vector_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

void run_parity(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const auto ds = gen_parity_dataset(cfg.n_features, cfg.count, cfg.seed);
  const auto n = ds.labels.size();

  CsvTable summary{"parity.csv", {"encoder", "accuracy", "distinguishability", "single_class"}, {}};
  CsvTable predictions{"parity_predictions.csv", {"sample", "vector", "label"}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    std::string v;
    for (Index j = 0; j < ds.vectors[i].size(); ++j) v += ds.vectors[i][j] > 0 ? '+' : '-';
    predictions.rows.push_back({std::to_string(i), v, std::to_string(ds.labels[i])});
  }

  json per_encoder = json::object();
  for (auto enc : cfg.encoders) {
    const auto states = encode_dataset(ds, enc, cfg.qift);
    const auto gram = fidelity_gram(states, enc);
    const auto loo = nn_classify_loo(gram, ds.labels);
    json entry{{"accuracy", loo.accuracy}, {"single_class", loo.single_class}};
    std::string dist_field;
    if (loo.single_class) {
      entry["distinguishability"] = nullptr;
    } else {
      const double d = distinguishability(states, ds.labels);
      entry["distinguishability"] = d;
      dist_field = format_double(d);
    }
    per_encoder[std::string(to_string(enc))] = entry;
    summary.rows.push_back({std::string(to_string(enc)), format_double(loo.accuracy), dist_field,
                            loo.single_class ? "true" : "false"});
    predictions.header.push_back(std::string(to_string(enc)));
    for (std::size_t i = 0; i < n; ++i) predictions.rows[i].push_back(std::to_string(loo.predictions[i]));
  }

  rep.results = {{"samples", n},
                 {"classifier", "leave-one-out 1-NN on fidelity; ties go to the lowest sample index, "
                                "a fully tied row predicts the label of sample 0"},
                 {"encoders", per_encoder}};
  rep.tables = {summary, predictions};
}

void run_curvature(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Rng rng(cfg.seed);
  const auto spec = seeded_spec(cfg, rng);
  const auto scan = information_curvature(spec, default_tau_grid());

  CsvTable table{"curvature.csv", {"tau", "error"}, {}};
  for (std::size_t k = 0; k < scan.taus.size(); ++k) {
    table.rows.push_back({format_double(scan.taus[k]), format_double(scan.errors[k])});
  }
  rep.results = {{"x", vector_json(spec.x)},
                 {"status", to_string(scan.status)},
                 {"commutator_norm", scan.commutator_norm},
                 {"slope", scan.fitted_slope ? json(*scan.fitted_slope) : json(nullptr)},
                 {"fit_rms", scan.fit_residual}};
  rep.tables = {table};
}

void run_resonance(const ExperimentConfig& cfg, const RunOptions& opts, ExperimentReport& rep) {
  Rng rng(cfg.seed);
  const std::size_t m = cfg.count.value_or(4);
  const std::vector<double> eps{-0.1, -0.05, 0.0, 0.05, 0.1};

  std::vector<SpectralProfile<double>> profiles;
  CsvTable spectra{"resonance_spectra.csv", {"spec", "mass_gap", "degenerate_ground", "zeeman_stability_proxy"}, {}};
  json specs = json::array();
  for (std::size_t k = 0; k < m; ++k) {
    const auto spec = seeded_spec(cfg, rng);
    profiles.push_back(spectral_profile(spec));
    const auto trace = zeeman_sweep(spec, eps);
    spectra.rows.push_back({std::to_string(k), format_double(profiles.back().mass_gap),
                            profiles.back().degenerate_ground ? "true" : "false",
                            format_double(trace.stability_score)});
    specs.push_back({{"x", vector_json(spec.x)}, {"mass_gap", profiles.back().mass_gap}});
  }

  CsvTable pairs{"resonance.csv", {"a", "b", "gap_a", "gap_b", "delta", "resonant", "spectrum_distance"}, {}};
  std::size_t resonant = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const auto v = resonance_verdict(profiles[a], profiles[b], opts.resonance_tolerance);
      resonant += v.resonant;
      pairs.rows.push_back({std::to_string(a), std::to_string(b), format_double(v.gap_a), format_double(v.gap_b),
                            format_double(v.delta), v.resonant ? "true" : "false",
                            v.spectrum_distance ? format_double(*v.spectrum_distance) : ""});
    }
  }
  rep.results = {{"tolerance", opts.resonance_tolerance},
                 {"specs", specs},
                 {"resonant_pairs", resonant},
                 {"zeeman_epsilons", eps}};
  rep.tables = {spectra, pairs};
}

void run_interference_audit(const ExperimentConfig& cfg, ExperimentReport& rep) {
  Rng rng(cfg.seed);
  const Index dim = padded_dimension(cfg.n_features);
  const std::size_t cases = cfg.count.value_or(10);

  CsvTable table{"interference_audit.csv",
                 {"case", "phased", "outcome", "classical", "interference", "born", "residual"}, {}};
  double worst = 0;
  std::size_t negative = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const auto u = haar_unitary<double>(dim, rng);
    const auto p = random_distribution<double>(dim, rng);
    // Odd cases carry random phases; even cases use the phase-locked state.
    std::optional<Eigen::VectorXd> phases;
    if (c % 2 == 1) phases = random_phases<double>(dim, rng);
    for (const auto& r : interference_decomposition_all(u, p, phases)) {
      worst = std::max(worst, r.identity_residual());
      if (r.interference_term < 0) ++negative;
      table.rows.push_back({std::to_string(c), phases ? "true" : "false", std::to_string(r.outcome),
                            format_double(r.classical_term), format_double(r.interference_term),
                            format_double(r.total), format_double(r.identity_residual())});
    }
  }
  rep.results = {{"dimension", dim},
                 {"cases", cases},
                 {"max_identity_residual", worst},
                 {"negative_interference_outcomes", negative}};
  rep.tables = {table};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ExperimentReport compute_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  ExperimentReport rep;
  rep.config = to_json(cfg);
  try {
    switch (cfg.experiment) {
      case ExperimentKind::parity: run_parity(cfg, rep); break;
      case ExperimentKind::curvature_scan: run_curvature(cfg, rep); break;
      case ExperimentKind::resonance: run_resonance(cfg, opts, rep); break;
      case ExperimentKind::interference_audit: run_interference_audit(cfg, rep); break;
    }
  } catch (const std::invalid_argument& e) {
    throw ExperimentError(ErrorKind::invalid_params, e.what());
  } catch (const std::out_of_range& e) {
    throw ExperimentError(ErrorKind::invalid_params, e.what());
  }
  json files = json::array();
  for (const auto& t : rep.tables) files.push_back(t.name);
  rep.results["tables"] = files;
  rep.provenance = {{"version", tool_version()}, {"seed", cfg.seed}, {"timestamp", utc_timestamp()}};
  return rep;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ExperimentError(ErrorKind::unwritable_output, "cannot create " + dir.string());
  }

  std::vector<std::pair<std::string, std::string>> files{{"report.json", report.to_json().dump(2) + "\n"}};
  for (const auto& t : report.tables) files.emplace_back(t.name, t.str());

  std::vector<fs::path> staged;
  auto discard = [&] {
    for (const auto& p : staged) fs::remove(p, ec);
  };
  for (const auto& [name, content] : files) {
    const fs::path tmp = dir / (name + ".tmp");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) staged.push_back(tmp);
    out << content;
    out.close();
    if (!out) {
      discard();
      throw ExperimentError(ErrorKind::unwritable_output, "cannot write " + tmp.string());
    }
  }
  for (std::size_t k = 0; k < files.size(); ++k) {
    fs::rename(staged[k], dir / files[k].first, ec);
    if (ec) {
      discard();
      throw ExperimentError(ErrorKind::unwritable_output, "cannot rename into " + dir.string());
    }
  }
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  auto report = compute_experiment(cfg, opts);
  write_report(report, cfg.output_dir);
  return report;
}

}  // namespace qenc::experiments
