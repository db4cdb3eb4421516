#include "glpm/prior.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "glpm/errors.hpp"

namespace glpm {

Eigen::SparseMatrix<double> ar1_precision(std::int32_t t, double rho) {
  if (t < 1) throw ValidationError("ar1: block length must be positive");
  if (!(rho > -1.0 && rho < 1.0))
    throw ValidationError("ar1: rho must lie in (-1, 1)");
  Eigen::SparseMatrix<double> q(t, t);
  if (t == 1) {
    q.insert(0, 0) = 1.0;
    q.makeCompressed();
    return q;
  }
  const double scale = 1.0 / (1.0 - rho * rho);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(3 * t);
  for (std::int32_t k = 0; k < t; ++k) {
    const double diag = (k == 0 || k == t - 1) ? 1.0 : 1.0 + rho * rho;
    trip.emplace_back(k, k, scale * diag);
    if (k + 1 < t) {
      trip.emplace_back(k, k + 1, -scale * rho);
      trip.emplace_back(k + 1, k, -scale * rho);
    }
  }
  q.setFromTriplets(trip.begin(), trip.end());
  q.makeCompressed();
  return q;
}

namespace {

Eigen::SparseMatrix<double> omega_from_triplet_file(const std::string& path,
                                                    std::int32_t n) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open omega triplet file: " + path);
  std::map<std::pair<std::int32_t, std::int32_t>, double> entries;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char ch : line) {
      if (ch == '#') break;
      if (!std::isspace(static_cast<unsigned char>(ch))) { blank = false; break; }
    }
    if (blank) continue;
    std::istringstream ls(line);
    std::int64_t a = 0, b = 0;
    double v = 0.0;
    if (!(ls >> a >> b >> v))
      throw ValidationError("omega triplets: malformed line " +
                            std::to_string(lineno));
    if (a < 1 || b < 1 || a > n || b > n)
      throw ValidationError("omega triplets: index out of range on line " +
                            std::to_string(lineno));
    if (!std::isfinite(v))
      throw ValidationError("omega triplets: non-finite value on line " +
                            std::to_string(lineno));
    const auto key = std::make_pair(static_cast<std::int32_t>(a - 1),
                                    static_cast<std::int32_t>(b - 1));
    if (entries.count(key))
      throw ValidationError("omega triplets: duplicate entry on line " +
                            std::to_string(lineno));
    entries[key] = v;
  }
  // Accept one triangle or both; mirror what is missing, reject mismatches.
  for (const auto& [key, v] : entries) {
    const auto mirror = std::make_pair(key.second, key.first);
    auto it = entries.find(mirror);
    if (it != entries.end() && std::abs(it->second - v) > 1e-12)
      throw ValidationError("omega triplets: asymmetric pair (" +
                            std::to_string(key.first + 1) + ", " +
                            std::to_string(key.second + 1) + ")");
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(entries.size() * 2);
  for (const auto& [key, v] : entries) {
    trip.emplace_back(key.first, key.second, v);
    if (key.first != key.second && !entries.count({key.second, key.first}))
      trip.emplace_back(key.second, key.first, v);
  }
  Eigen::SparseMatrix<double> q(n, n);
  q.setFromTriplets(trip.begin(), trip.end());
  q.makeCompressed();
  return q;
}

}  // namespace

Eigen::SparseMatrix<double> build_omega(const OmegaSpec& spec, std::int32_t n) {
  switch (spec.kind) {
    case OmegaSpec::Kind::identity: {
      Eigen::SparseMatrix<double> q(n, n);
      q.setIdentity();
      return q;
    }
    case OmegaSpec::Kind::ar1: {
      std::vector<char> covered(n, 0);
      std::vector<Eigen::Triplet<double>> trip;
      for (const auto& block : spec.blocks) {
        if (block.empty()) throw ValidationError("ar1: empty block");
        for (std::int32_t node : block) {
          if (node < 0 || node >= n)
            throw ValidationError("ar1: node index out of range");
          if (covered[node])
            throw ValidationError("ar1: node " + std::to_string(node + 1) +
                                  " appears in two blocks");
          covered[node] = 1;
        }
        const auto t = static_cast<std::int32_t>(block.size());
        const Eigen::SparseMatrix<double> q = ar1_precision(t, spec.rho);
        for (std::int32_t col = 0; col < t; ++col) {
          for (Eigen::SparseMatrix<double>::InnerIterator it(q, col); it; ++it) {
            trip.emplace_back(block[it.row()], block[col], it.value());
          }
        }
      }
      for (std::int32_t i = 0; i < n; ++i) {
        if (!covered[i]) trip.emplace_back(i, i, 1.0);
      }
      Eigen::SparseMatrix<double> q(n, n);
      q.setFromTriplets(trip.begin(), trip.end());
      q.makeCompressed();
      return q;
    }
    case OmegaSpec::Kind::triplets:
      return omega_from_triplet_file(spec.triplet_path, n);
  }
  throw ValidationError("omega: unknown kind");
}

void PriorSpec::validate(std::int32_t n, std::int32_t num_categories) const {
  if (omega.rows() != n || omega.cols() != n)
    throw ValidationError("prior: omega must be " + std::to_string(n) + "x" +
                          std::to_string(n));
  if (static_cast<std::int32_t>(tau_alpha.size()) != num_categories ||
      static_cast<std::int32_t>(tau_beta.size()) != num_categories)
    throw ValidationError("prior: Beta hyperparameter vectors must have length " +
                          std::to_string(num_categories));
  for (double a : tau_alpha)
    if (!(a > 0.0)) throw ValidationError("prior: tau alpha must be positive");
  for (double b : tau_beta)
    if (!(b > 0.0)) throw ValidationError("prior: tau beta must be positive");
  if (!(gamma_a > 0.0) || !(gamma_b > 0.0))
    throw ValidationError("prior: gamma hyperparameters must be positive");
  if (d < 1) throw ValidationError("prior: latent dimension must be positive");
  const Eigen::SparseMatrix<double> diff =
      Eigen::SparseMatrix<double>(omega.transpose()) - omega;
  if (diff.coeffs().size() > 0 &&
      diff.coeffs().abs().maxCoeff() > 1e-10)
    throw ValidationError("prior: omega must be symmetric");
}

PriorSpec default_prior(std::int32_t n, std::int32_t num_categories,
                        std::int32_t d, double gamma_a, double gamma_b) {
  PriorSpec p;
  p.omega = build_omega(OmegaSpec{}, n);
  p.tau_alpha.assign(num_categories, 1.0);
  p.tau_beta.assign(num_categories, 1.0);
  p.gamma_a = gamma_a;
  p.gamma_b = gamma_b;
  p.d = d;
  return p;
}

}  // namespace glpm
