#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "glpm/dyads.hpp"

namespace glpm {

/// Immutable undirected network with categorical dyad covariates and an
/// observed-dyad mask. Dyad-indexed arrays are dense over the n(n-1)/2
/// canonical dyads; fine for desk scale.
class Network {
 public:
  /// Node count, edges (canonical dyads), per-dyad categories (1-based code,
  /// dense over linear dyad indices; empty means all category 1), number of
  /// categories, and the unobserved dyads. Validates everything.
  Network(std::int32_t n, std::vector<Dyad> edges,
          std::vector<std::int16_t> covariate, std::int32_t num_categories,
          const std::vector<Dyad>& unobserved = {});

  std::int32_t n() const { return n_; }
  std::int32_t num_categories() const { return num_categories_; }
  const std::vector<Dyad>& edges() const { return edges_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

  /// Category of a dyad, in [1, C].
  std::int32_t category(const Dyad& d) const { return covariate_[dyad_index(d)]; }
  std::int32_t category_at(std::int64_t linear_index) const {
    return covariate_[linear_index];
  }

  bool is_observed(const Dyad& d) const { return observed_[dyad_index(d)]; }
  bool is_edge(const Dyad& d) const { return adjacency_[dyad_index(d)]; }
  bool is_observed_idx(std::int64_t linear_index) const {
    return observed_[linear_index];
  }
  bool is_edge_idx(std::int64_t linear_index) const {
    return adjacency_[linear_index];
  }

  const std::vector<std::int32_t>& neighbors(std::int32_t i) const {
    return neighbor_lists_[i];
  }
  std::int32_t degree(std::int32_t i) const {
    return static_cast<std::int32_t>(neighbor_lists_[i].size());
  }

  /// zeta^1_c: observed edges with category c. Index 0 unused; size C+1.
  const std::vector<std::int64_t>& edge_count_per_category() const {
    return edge_count_per_category_;
  }

  /// Combinatorial Laplacian D - A over observed edges, full symmetric storage.
  const Eigen::SparseMatrix<double>& laplacian() const { return laplacian_; }

  /// Observed dyads with no edge, canonical order; category 0 means all.
  const std::vector<Dyad>& observed_non_edges() const { return non_edges_; }
  const std::vector<Dyad>& observed_non_edges(std::int32_t category) const;

  std::int64_t observed_dyad_count() const { return observed_dyad_count_; }
  std::int64_t unobserved_dyad_count() const {
    return dyad_count(n_) - observed_dyad_count_;
  }

  /// All observed dyads (edges and non-edges) in canonical order.
  std::vector<Dyad> observed_dyads() const;

 private:
  std::int32_t n_;
  std::int32_t num_categories_;
  std::vector<Dyad> edges_;
  std::vector<std::int16_t> covariate_;
  std::vector<char> observed_;
  std::vector<char> adjacency_;
  std::vector<std::vector<std::int32_t>> neighbor_lists_;
  std::vector<std::int64_t> edge_count_per_category_;
  Eigen::SparseMatrix<double> laplacian_;
  std::vector<Dyad> non_edges_;
  std::vector<std::vector<Dyad>> non_edges_by_category_;
  std::int64_t observed_dyad_count_;
};

/// Parses the "i<TAB>j" one-dyad-per-line format (1-based, '#' comments,
/// blank lines skipped). Returned dyads are canonical and 0-based.
std::vector<Dyad> parse_dyad_lines(std::istream& in, std::int32_t n,
                                   const std::string& what);

struct CovariateData {
  std::vector<std::int16_t> codes;  // dense over dyad indices, default 1
  std::int32_t num_categories = 1;
};

/// Parses the covariate format: header "#C=<int>", then "i<TAB>j<TAB>c" lines.
CovariateData parse_covariates(std::istream& in, std::int32_t n);

/// Loads a network from files. Empty covariate_path means C=1; empty mask_path
/// means all dyads observed. Node count is taken from the edge list header
/// "#n=<int>" when present, otherwise the largest index seen.
Network load_network(const std::string& edge_list_path,
                     const std::string& covariate_path = "",
                     const std::string& mask_path = "");

}  // namespace glpm
