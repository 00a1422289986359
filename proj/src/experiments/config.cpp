#include "qenc/experiments.hpp"

#include <fstream>
#include <limits>
#include <set>

namespace qenc::experiments {

using nlohmann::json;

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::malformed_config: return "malformed config";
    case ErrorKind::unknown_key: return "unknown key";
    case ErrorKind::unknown_experiment: return "unknown experiment";
    case ErrorKind::unknown_encoder: return "unknown encoder";
    case ErrorKind::invalid_params: return "invalid parameters";
    case ErrorKind::unwritable_output: return "unwritable output";
  }
  return "error";
}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::parity: return "parity";
    case ExperimentKind::curvature_scan: return "curvature-scan";
    case ExperimentKind::resonance: return "resonance";
    case ExperimentKind::interference_audit: return "interference-audit";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw ExperimentError(kind, msg); }

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(ErrorKind::unknown_key, "'" + key + "' in " + where);
  }
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) fail(ErrorKind::malformed_config, "'" + key + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ErrorKind::invalid_params, "'" + key + "' must be finite");
  return v;
}

std::int64_t integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) fail(ErrorKind::malformed_config, "'" + key + "' must be an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > std::uint64_t(std::numeric_limits<std::int64_t>::max())) {
    fail(ErrorKind::invalid_params, "'" + key + "' is out of range");
  }
  return j.get<std::int64_t>();
}

ExperimentKind parse_experiment(const json& j) {
  if (!j.is_string()) fail(ErrorKind::malformed_config, "'experiment' must be a string");
  const auto name = j.get<std::string>();
  for (auto k : {ExperimentKind::parity, ExperimentKind::curvature_scan, ExperimentKind::resonance,
                 ExperimentKind::interference_audit}) {
    if (name == to_string(k)) return k;
  }
  fail(ErrorKind::unknown_experiment, "'" + name + "'");
}

QiftParams parse_qift(const json& j) {
  if (!j.is_object()) fail(ErrorKind::malformed_config, "'qift' must be an object");
  reject_unknown_keys(j, {"mu", "tau", "topology"}, "qift");
  QiftParams q;
  if (j.contains("mu")) q.mu = number(j["mu"], "qift.mu");
  if (j.contains("tau")) q.tau = number(j["tau"], "qift.tau");
  if (!(q.tau > 0)) fail(ErrorKind::invalid_params, "qift.tau must be positive");
  if (j.contains("topology")) {
    const json& t = j["topology"];
    if (t.is_string()) {
      q.topology = t.get<std::string>();
      if (q.topology != "ring" && q.topology != "complete") {
        fail(ErrorKind::invalid_params, "qift.topology must be \"ring\", \"complete\" or a matrix");
      }
    } else if (t.is_array()) {
      const auto n = static_cast<Index>(t.size());
      if (n == 0) fail(ErrorKind::invalid_params, "qift.topology matrix is empty");
      q.topology = "custom";
      q.couplings.resize(n, n);
      for (Index r = 0; r < n; ++r) {
        const json& row = t[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
          fail(ErrorKind::malformed_config, "qift.topology must be a square matrix");
        }
        for (Index c = 0; c < n; ++c) q.couplings(r, c) = number(row[static_cast<std::size_t>(c)], "qift.topology");
      }
      try {
        validate_couplings(q.couplings);
      } catch (const std::invalid_argument& e) {
        fail(ErrorKind::invalid_params, std::string("qift.topology: ") + e.what());
      }
    } else {
      fail(ErrorKind::malformed_config, "qift.topology must be a string or a matrix");
    }
  }
  return q;
}

// Upper limits keep every experiment at desk scale.
void validate(const ExperimentConfig& cfg) {
  auto bad = [](const std::string& msg) { fail(ErrorKind::invalid_params, msg); };
  const int n = cfg.n_features;
  switch (cfg.experiment) {
    case ExperimentKind::parity: {
      if (n < 1 || n > 16 || !is_power_of_two(n)) bad("parity needs n_features a power of two in [1, 16]");
      const std::size_t total = std::size_t{1} << n;
      const std::size_t samples = cfg.count.value_or(total);
      if (samples < 2 || samples > total) {
        bad("count must lie in [2, " + std::to_string(total) + "] for n_features = " + std::to_string(n));
      }
      if (samples > 4096) bad("parity runs are limited to 4096 samples");
      if (cfg.encoders.empty()) bad("encoders must not be empty");
      for (auto e : cfg.encoders) {
        if (e == EncoderId::qift && !cfg.qift) bad("encoder qift needs a qift block");
        if (e == EncoderId::qift && n > 10) bad("encoder qift is limited to 10 features");
      }
      break;
    }
    case ExperimentKind::curvature_scan:
      if (n < 1 || n > 8) bad("curvature-scan needs n_features in [1, 8]");
      break;
    case ExperimentKind::resonance:
      if (n < 1 || n > 8) bad("resonance needs n_features in [1, 8]");
      if (cfg.count && (*cfg.count < 2 || *cfg.count > 64)) bad("resonance count must lie in [2, 64]");
      break;
    case ExperimentKind::interference_audit:
      if (n < 2 || n > 256) bad("interference-audit needs n_features in [2, 256]");
      if (cfg.count && (*cfg.count < 1 || *cfg.count > 1000)) bad("interference-audit count must lie in [1, 1000]");
      break;
  }
  if (cfg.qift && cfg.qift->topology == "custom" && cfg.experiment != ExperimentKind::interference_audit &&
      cfg.qift->couplings.rows() != n) {
    bad("qift.topology matrix must be n_features x n_features");
  }
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) fail(ErrorKind::malformed_config, "config must be a JSON object");
  reject_unknown_keys(j, {"experiment", "n_features", "count", "seed", "encoders", "qift", "output_dir"}, "config");
  if (!j.contains("experiment")) fail(ErrorKind::malformed_config, "'experiment' is required");

  ExperimentConfig cfg;
  cfg.experiment = parse_experiment(j["experiment"]);
  if (j.contains("n_features")) {
    const auto n = integer(j["n_features"], "n_features");
    if (n < 1 || n > 4096) fail(ErrorKind::invalid_params, "n_features is out of range");
    cfg.n_features = static_cast<int>(n);
  }
  if (j.contains("count")) {
    const json& c = j["count"];
    if (c.is_string() && c.get<std::string>() == "all") {
      cfg.count.reset();
    } else {
      const auto v = integer(c, "count");
      if (v < 1) fail(ErrorKind::invalid_params, "count must be positive");
      cfg.count = static_cast<std::size_t>(v);
    }
  }
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0)) {
      fail(ErrorKind::malformed_config, "'seed' must be a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  if (j.contains("encoders")) {
    const json& e = j["encoders"];
    if (!e.is_array()) fail(ErrorKind::malformed_config, "'encoders' must be a list");
    cfg.encoders.clear();
    for (const auto& item : e) {
      if (!item.is_string()) fail(ErrorKind::malformed_config, "encoder names must be strings");
      const auto name = item.get<std::string>();
      const auto id = parse_encoder(name);
      if (!id) fail(ErrorKind::unknown_encoder, "'" + name + "'");
      cfg.encoders.push_back(*id);
    }
  }
  if (j.contains("qift")) cfg.qift = parse_qift(j["qift"]);
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) fail(ErrorKind::malformed_config, "'output_dir' must be a string");
    cfg.output_dir = j["output_dir"].get<std::string>();
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(ErrorKind::malformed_config, "cannot open " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::malformed_config, file.string() + ": " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = std::string(to_string(cfg.experiment));
  j["n_features"] = cfg.n_features;
  if (cfg.count) {
    j["count"] = *cfg.count;
  } else {
    j["count"] = "all";
  }
  j["seed"] = cfg.seed;
  j["encoders"] = json::array();
  for (auto e : cfg.encoders) j["encoders"].push_back(std::string(to_string(e)));
  if (cfg.qift) {
    json q{{"mu", cfg.qift->mu}, {"tau", cfg.qift->tau}};
    if (cfg.qift->topology == "custom") {
      json m = json::array();
      for (Index r = 0; r < cfg.qift->couplings.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < cfg.qift->couplings.cols(); ++c) row.push_back(cfg.qift->couplings(r, c));
        m.push_back(std::move(row));
      }
      q["topology"] = std::move(m);
    } else {
      q["topology"] = cfg.qift->topology;
    }
    j["qift"] = std::move(q);
  }
  j["output_dir"] = cfg.output_dir.string();
  return j;
}

}  // namespace qenc::experiments
