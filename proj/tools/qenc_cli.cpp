#include "qenc/csv.hpp"
#include "qenc/encoders.hpp"
#include "qenc/experiments.hpp"
#include "qenc/interference.hpp"
#include "qenc/qift.hpp"
#include "qenc/random.hpp"
#include "qenc/spectral.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qenc;
namespace ex = qenc::experiments;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  std::string format = "csv";
  double tol = 1e-3;
};

// A result table plus free-form scalar results.
struct Output {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
  json results = json::object();
};

std::string csv_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return csv::format_double(v.get<double>());
  return v.dump();
}

std::string render(const Output& o, const std::string& format) {
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : o.rows) {
      json obj = json::object();
      for (std::size_t k = 0; k < o.header.size(); ++k) obj[o.header[k]] = r[k];
      rows.push_back(std::move(obj));
    }
    return json{{"results", o.results}, {"rows", rows}}.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : o.rows) {
    std::vector<std::string> fields;
    for (const auto& v : r) fields.push_back(csv_field(v));
    rows.push_back(std::move(fields));
  }
  return csv::write(o.header, rows);
}

void emit(const Output& o, const Globals& g, const std::string& command) {
  const std::string text = render(o, g.format);
  if (g.out.empty()) {
    std::cout << text;
    if (g.format == "csv") {
      for (const auto& [k, v] : o.results.items()) std::cerr << k << ": " << v.dump() << "\n";
    }
    return;
  }
  std::error_code ec;
  fs::create_directories(g.out, ec);
  const fs::path target = fs::path(g.out) / (command + "." + g.format);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw ex::ExperimentError(ex::ErrorKind::unwritable_output, "cannot write " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) throw ex::ExperimentError(ex::ErrorKind::unwritable_output, "cannot write " + target.string());
  if (g.format == "csv") {
    for (const auto& [k, v] : o.results.items()) std::cout << k << ": " << v.dump() << "\n";
  }
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::MatrixXd couplings(const std::string& topology, int n) {
  if (topology == "ring") return ring_couplings(n);
  if (topology == "complete") return complete_couplings(n);
  if (topology == "none") return Eigen::MatrixXd::Zero(n, n);
  throw std::invalid_argument("topology must be ring, complete or none");
}

struct SpecArgs {
  std::vector<double> x;
  std::string topology = "ring";
  double mu = 1.0;
  double tau = 0.1;
  int steps = 1;

  void add(CLI::App* app, bool require_x) {
    auto* opt = app->add_option("--x", x, "field strengths, comma separated")->delimiter(',');
    if (require_x) opt->required();
    app->add_option("--topology", topology, "ring, complete or none")->check(CLI::IsMember({"ring", "complete", "none"}));
    app->add_option("--mu", mu, "coupling strength");
    app->add_option("--tau", tau, "Trotter step")->check(CLI::PositiveNumber);
    app->add_option("--steps", steps, "Trotter repetitions")->check(CLI::PositiveNumber);
  }

  [[nodiscard]] HamiltonianSpec<> spec() const {
    HamiltonianSpec<> s;
    s.x = to_vector(x);
    s.couplings = couplings(topology, static_cast<int>(x.size()));
    s.mu = mu;
    s.tau = tau;
    s.trotter_steps = steps;
    s.validate();
    return s;
  }
};

Output state_output(const StateVector<>& psi) {
  Output o;
  o.header = {"index", "re", "im", "probability"};
  for (Index i = 0; i < psi.dim(); ++i) {
    o.rows.push_back({i, psi[i].real(), psi[i].imag(), std::norm(psi[i])});
  }
  o.results["n_qubits"] = psi.n_qubits();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum encoding and interference toolkit"};
  app.set_version_flag("--version", std::string(ex::tool_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--out", g.out, "output directory (stdout when absent)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", g.tol, "resonance tolerance")->check(CLI::PositiveNumber);

  // encode
  auto* encode = app.add_subcommand("encode", "encode a data vector into a state");
  std::string encoder = "amplitude";
  std::vector<double> data, phases;
  SpecArgs encode_spec;
  encode->add_option("--encoder", encoder, "probability_loading, amplitude, phase or qift")
      ->check(CLI::IsMember({"probability_loading", "amplitude", "phase", "qift"}));
  encode->add_option("--data", data, "data vector, comma separated")->delimiter(',')->required();
  encode->add_option("--phases", phases, "phases for the phase encoder (default: the data)")->delimiter(',');
  encode->add_option("--topology", encode_spec.topology, "qift topology")
      ->check(CLI::IsMember({"ring", "complete", "none"}));
  encode->add_option("--mu", encode_spec.mu, "qift coupling strength");
  encode->add_option("--tau", encode_spec.tau, "qift step")->check(CLI::PositiveNumber);

  // interfere
  auto* interfere = app.add_subcommand("interfere", "classical/interference split under a Haar unitary");
  int qubits = 2;
  std::vector<double> probs;
  bool random_phase = false;
  interfere->add_option("--qubits", qubits, "register size")->check(CLI::Range(1, 8));
  interfere->add_option("--p", probs, "distribution (default: seeded Dirichlet)")->delimiter(',');
  interfere->add_flag("--random-phases", random_phase, "modulate the loaded state with seeded phases");

  // trotter-scan
  auto* trotter = app.add_subcommand("trotter-scan", "Trotter error against tau and its log-log slope");
  SpecArgs trotter_spec;
  trotter_spec.add(trotter, false);
  int trotter_qubits = 4;
  int points = 13;
  trotter->add_option("--qubits", trotter_qubits, "register size when --x is absent (x is seeded in [-pi, pi])")
      ->check(CLI::Range(1, 8));
  trotter->add_option("--points", points, "grid points between 1e-3 and 1e-1")->check(CLI::Range(5, 200));

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and mass gap of the effective Hamiltonian");
  SpecArgs spectrum_spec;
  spectrum_spec.add(spectrum, true);

  // resonance
  auto* resonance = app.add_subcommand("resonance", "gap-coincidence verdict for two specs");
  SpecArgs res_a, res_b;
  resonance->add_option("--xa", res_a.x, "field strengths of spec A")->delimiter(',')->required();
  resonance->add_option("--xb", res_b.x, "field strengths of spec B")->delimiter(',')->required();
  std::string res_topology = "ring";
  double res_mu = 1.0;
  resonance->add_option("--topology", res_topology, "topology of both specs")
      ->check(CLI::IsMember({"ring", "complete", "none"}));
  resonance->add_option("--mu", res_mu, "coupling strength of both specs");

  // parity-exp
  auto* parity = app.add_subcommand("parity-exp", "parity separability under several encoders");
  int n_features = 4;
  std::string count = "all";
  std::vector<std::string> encoders{"probability_loading", "amplitude"};
  parity->add_option("--n-features", n_features, "sign-vector length (power of two)");
  parity->add_option("--count", count, "sample count or 'all'");
  parity->add_option("--encoders", encoders, "encoders, comma separated")->delimiter(',');

  // run
  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  std::string config_path;
  run->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*encode) {
      const Eigen::VectorXd v = to_vector(data);
      if (encoder == "qift") {
        encode_spec.x = data;
        emit(state_output(evolve_vacuum(encode_spec.spec())), g, "encode");
      } else if (encoder == "amplitude") {
        emit(state_output(amplitude_encoding(DataVector<>(v))), g, "encode");
      } else {
        const DataVector<> dv(v);
        const auto p = dv.induced_distribution();
        if (encoder == "probability_loading") {
          emit(state_output(probability_loading(p)), g, "encode");
        } else {
          Eigen::VectorXd phi = phases.empty() ? dv.values() : zero_pad(to_vector(phases));
          emit(state_output(phase_encoding(p, phi)), g, "encode");
        }
      }
    } else if (*interfere) {
      Rng rng(g.seed);
      const Index dim = Index{1} << qubits;
      const auto u = haar_unitary<double>(dim, rng);
      const Distribution<> p = probs.empty() ? random_distribution<double>(dim, rng) : Distribution<>(to_vector(probs));
      if (p.dim() != dim) throw std::invalid_argument("--p must pad to 2^qubits entries");
      std::optional<Eigen::VectorXd> phi;
      if (random_phase) phi = random_phases<double>(dim, rng);
      Output o;
      o.header = {"outcome", "classical", "interference", "interference_imag", "born", "residual"};
      double worst = 0;
      for (const auto& r : interference_decomposition_all(u, p, phi)) {
        worst = std::max(worst, r.identity_residual());
        o.rows.push_back({r.outcome, r.classical_term, r.interference_term, r.interference_imag, r.total,
                          r.identity_residual()});
      }
      o.results = {{"seed", g.seed}, {"max_residual", worst}};
      emit(o, g, "interfere");
    } else if (*trotter) {
      if (trotter_spec.x.empty()) {
        Rng rng(g.seed);
        const auto x = random_uniform<double>(trotter_qubits, -std::numbers::pi, std::numbers::pi, rng);
        trotter_spec.x.assign(x.data(), x.data() + x.size());
      }
      const auto spec = trotter_spec.spec();
      const auto scan = information_curvature(spec, default_tau_grid<double>(points));
      Output o;
      o.header = {"tau", "error"};
      for (std::size_t k = 0; k < scan.taus.size(); ++k) o.rows.push_back({scan.taus[k], scan.errors[k]});
      o.results = {{"x", to_json(spec.x)},
                   {"status", to_string(scan.status)},
                   {"slope", scan.fitted_slope ? json(*scan.fitted_slope) : json(nullptr)},
                   {"commutator_norm", scan.commutator_norm}};
      emit(o, g, "trotter-scan");
    } else if (*spectrum) {
      const auto prof = spectral_profile(spectrum_spec.spec());
      Output o;
      o.header = {"level", "eigenvalue"};
      for (Index k = 0; k < prof.eigenvalues.size(); ++k) o.rows.push_back({k, prof.eigenvalues[k]});
      o.results = {{"mass_gap", prof.mass_gap}, {"degenerate_ground", prof.degenerate_ground}};
      emit(o, g, "spectrum");
    } else if (*resonance) {
      res_a.topology = res_b.topology = res_topology;
      res_a.mu = res_b.mu = res_mu;
      const auto v = resonance_similarity(res_a.spec(), res_b.spec(), g.tol);
      Output o;
      o.header = {"gap_a", "gap_b", "delta", "tolerance", "resonant", "spectrum_distance"};
      o.rows.push_back({v.gap_a, v.gap_b, v.delta, v.tolerance, v.resonant,
                        v.spectrum_distance ? json(*v.spectrum_distance) : json(nullptr)});
      emit(o, g, "resonance");
    } else if (*parity) {
      json cfg{{"experiment", "parity"}, {"n_features", n_features}, {"seed", g.seed}, {"encoders", encoders}};
      if (count == "all") {
        cfg["count"] = "all";
      } else {
        cfg["count"] = std::stoll(count);
      }
      if (std::find(encoders.begin(), encoders.end(), "qift") != encoders.end()) cfg["qift"] = json::object();
      const auto report = ex::compute_experiment(ex::parse_config(cfg));
      Output o;
      o.header = {"encoder", "accuracy", "distinguishability"};
      for (const auto& [name, r] : report.results["encoders"].items()) {
        o.rows.push_back({name, r["accuracy"], r["distinguishability"]});
      }
      o.results = {{"samples", report.results["samples"]}};
      emit(o, g, "parity-exp");
    } else if (*run) {
      auto cfg = ex::load_config(config_path);
      if (g.seed_given) cfg.seed = g.seed;
      if (!g.out.empty()) cfg.output_dir = g.out;
      const auto report = ex::run_experiment(cfg, ex::RunOptions{g.tol});
      std::cout << "wrote";
      for (const auto& t : report.tables) std::cout << " " << t.name;
      std::cout << " report.json to " << cfg.output_dir.string() << "\n";
    }
  } catch (const ex::ExperimentError& e) {
    std::cerr << "qenc: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "qenc: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
