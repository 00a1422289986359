#include "qenc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qenc::experiments {

GramMatrix fidelity_gram(std::span<const StateVector<>> states, EncoderId encoder) {
  const auto n = static_cast<Index>(states.size());
  GramMatrix g;
  g.encoder = encoder;
  g.entries.resize(n, n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = a; b < n; ++b) {
      const double k = fidelity(states[static_cast<std::size_t>(a)], states[static_cast<std::size_t>(b)]);
      g.entries(a, b) = g.entries(b, a) = k;
    }
  }
  return g;
}

LooResult nn_classify_loo(const GramMatrix& gram, std::span<const int> labels, double tie_tol) {
  const auto n = static_cast<Index>(labels.size());
  if (gram.entries.rows() != n || gram.entries.cols() != n) {
    throw std::invalid_argument("Gram matrix and label count differ");
  }
  if (n < 2) throw std::invalid_argument("leave-one-out needs at least two samples");

  LooResult out;
  out.single_class = std::all_of(labels.begin(), labels.end(), [&](int l) { return l == labels.front(); });
  std::size_t correct = 0;
  for (Index i = 0; i < n; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    double worst = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      best = std::max(best, gram.entries(i, j));
      worst = std::min(worst, gram.entries(i, j));
    }
    Index neighbour = 0;
    if (best - worst > tie_tol) {
      for (Index j = 0; j < n; ++j) {
        if (j != i && gram.entries(i, j) >= best - tie_tol) {
          neighbour = j;
          break;
        }
      }
    }
    const int predicted = labels[static_cast<std::size_t>(neighbour)];
    out.predictions.push_back(predicted);
    if (predicted == labels[static_cast<std::size_t>(i)]) ++correct;
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  return out;
}

double distinguishability(std::span<const StateVector<>> states, std::span<const int> labels) {
  if (states.size() != labels.size()) throw std::invalid_argument("state and label counts differ");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < states.size(); ++a) {
    for (std::size_t b = a + 1; b < states.size(); ++b) {
      if (labels[a] == labels[b]) continue;
      best = std::min(best, std::sqrt(std::max(0.0, 1.0 - fidelity(states[a], states[b]))));
    }
  }
  if (std::isinf(best)) throw std::invalid_argument("distinguishability needs both classes present");
  return best;
}

}  // namespace qenc::experiments
