#include "core/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ants {
namespace {

constexpr double kTauFloor = 1e-12;

void check_args(std::span<const double> q, double tau) {
  if (q.empty()) throw std::domain_error("entropy: empty score vector");
  if (!(tau >= kTauFloor)) throw std::domain_error("entropy: temperature below 1e-12");
}

// Shared sparsemax threshold: z must be sorted descending.  Returns theta such
// that p_i = max(z_i - theta, 0) lies on the simplex, with support size rho.
double sparsemax_theta(const std::vector<double>& z_sorted) {
  double cumsum = 0.0;
  double theta = z_sorted[0] - 1.0;
  for (std::size_t k = 1; k <= z_sorted.size(); ++k) {
    cumsum += z_sorted[k - 1];
    if (1.0 + double(k) * z_sorted[k - 1] > cumsum) theta = (cumsum - 1.0) / double(k);
  }
  return theta;
}

}  // namespace

double soft_value(std::span<const double> q, EntropyKind kind, double tau) {
  check_args(q, tau);
  const double m = *std::max_element(q.begin(), q.end());
  if (kind == EntropyKind::shannon) {
    double sum = 0.0;
    for (double v : q) sum += std::exp((v - m) / tau);
    return m + tau * std::log(sum);
  }
  // Tsallis-2 dual value: with z = (q - m)/tau sorted descending and support S
  // of the projection, the value is m + tau/2 * (1 + sum_S (z_i^2 - theta^2)).
  std::vector<double> z(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) z[i] = (q[i] - m) / tau;
  std::sort(z.begin(), z.end(), std::greater<>());
  const double theta = sparsemax_theta(z);
  double acc = 1.0;
  for (double zi : z) {
    if (zi <= theta) break;
    acc += zi * zi - theta * theta;
  }
  return m + 0.5 * tau * acc;
}

std::vector<double> soft_policy(std::span<const double> q, EntropyKind kind, double tau) {
  check_args(q, tau);
  const double m = *std::max_element(q.begin(), q.end());
  std::vector<double> p(q.size());
  if (kind == EntropyKind::shannon) {
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      p[i] = std::exp((q[i] - m) / tau);
      sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
  }
  std::vector<double> z(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) z[i] = (q[i] - m) / tau;
  std::vector<double> sorted = z;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double theta = sparsemax_theta(sorted);
  for (std::size_t i = 0; i < q.size(); ++i) p[i] = std::max(z[i] - theta, 0.0);
  return p;
}

double entropy(std::span<const double> probs, EntropyKind kind) {
  if (kind == EntropyKind::shannon) {
    double h = 0.0;
    for (double pi : probs)
      if (pi > 0.0) h -= pi * std::log(pi);
    return h;
  }
  double s2 = 0.0;
  for (double pi : probs) s2 += pi * pi;
  return 0.5 * (1.0 - s2);
}

double max_entropy(EntropyKind kind, std::size_t k) {
  if (k == 0) throw std::domain_error("entropy: zero action count");
  if (kind == EntropyKind::shannon) return std::log(double(k));
  return 0.5 * (1.0 - 1.0 / double(k));
}

}  // namespace ants
