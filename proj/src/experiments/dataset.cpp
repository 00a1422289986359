#include "qenc/encoders.hpp"
#include "qenc/experiments.hpp"
#include "qenc/random.hpp"

#include <algorithm>
#include <numeric>

namespace qenc::experiments {

namespace {

constexpr int kMaxParityComponents = 16;

}  // namespace

std::string_view to_string(EncoderId id) {
  switch (id) {
    case EncoderId::probability_loading: return "probability_loading";
    case EncoderId::amplitude: return "amplitude";
    case EncoderId::phase: return "phase";
    case EncoderId::qift: return "qift";
  }
  return "unknown";
}

std::optional<EncoderId> parse_encoder(std::string_view name) {
  for (auto id : {EncoderId::probability_loading, EncoderId::amplitude, EncoderId::phase, EncoderId::qift}) {
    if (name == to_string(id)) return id;
  }
  return std::nullopt;
}

LabeledDataset gen_parity_dataset(int n_components, std::optional<std::size_t> count, std::uint64_t seed) {
  if (n_components < 1 || n_components > kMaxParityComponents || !is_power_of_two(n_components)) {
    throw std::invalid_argument("parity dataset needs a power-of-two component count in [1, 16]");
  }
  const std::size_t total = std::size_t{1} << n_components;
  if (count && (*count == 0 || *count > total)) {
    throw std::invalid_argument("requested " + std::to_string(*count) + " samples but only " +
                                std::to_string(total) + " distinct sign vectors exist");
  }

  std::vector<std::size_t> indices(total);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  if (count && *count < total) {
    Rng rng(seed);
    std::shuffle(indices.begin(), indices.end(), rng);
    indices.resize(*count);
    std::sort(indices.begin(), indices.end());
  }

  LabeledDataset ds;
  ds.seed = seed;
  for (std::size_t b : indices) {
    Eigen::VectorXd v(n_components);
    int parity = 1;
    for (int j = 0; j < n_components; ++j) {
      const bool negative = (b >> bit_position(n_components, j)) & 1U;
      v[j] = negative ? -1.0 : 1.0;
      if (negative) parity = -parity;
    }
    ds.vectors.push_back(std::move(v));
    ds.labels.push_back(parity);
  }
  return ds;
}

Eigen::MatrixXd QiftParams::couplings_for(int n_qubits) const {
  if (topology == "ring") return ring_couplings(n_qubits);
  if (topology == "complete") return complete_couplings(n_qubits);
  if (topology == "custom") {
    if (couplings.rows() != n_qubits || couplings.cols() != n_qubits) {
      throw std::invalid_argument("custom coupling matrix must be " + std::to_string(n_qubits) + "x" +
                                  std::to_string(n_qubits));
    }
    return couplings;
  }
  throw std::invalid_argument("unknown topology '" + topology + "'");
}

std::vector<StateVector<>> encode_dataset(const LabeledDataset& ds, EncoderId encoder,
                                          const std::optional<QiftParams>& qift) {
  if (encoder == EncoderId::qift && !qift) {
    throw std::invalid_argument("the qift encoder needs mu, tau and a topology");
  }
  std::vector<StateVector<>> states;
  states.reserve(ds.vectors.size());
  for (const auto& v : ds.vectors) {
    switch (encoder) {
      case EncoderId::probability_loading:
        states.push_back(probability_loading(DataVector<>(v).induced_distribution()));
        break;
      case EncoderId::amplitude:
        states.push_back(amplitude_encoding(DataVector<>(v)));
        break;
      case EncoderId::phase: {
        const DataVector<> data(v);
        states.push_back(phase_encoding(data.induced_distribution(), data.values()));
        break;
      }
      case EncoderId::qift: {
        HamiltonianSpec<> spec;
        spec.x = v;
        spec.couplings = qift->couplings_for(static_cast<int>(v.size()));
        spec.mu = qift->mu;
        spec.tau = qift->tau;
        states.push_back(evolve_vacuum(spec));
        break;
      }
    }
  }
  return states;
}

}  // namespace qenc::experiments
