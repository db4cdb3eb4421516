#include "glpm/network.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "glpm/errors.hpp"

namespace glpm {
namespace {

std::int64_t parse_int_or_throw(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(what + ": bad integer '" + text + "'");
  }
}

bool is_blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

struct RawDyadFile {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // 1-based as read
  std::int64_t declared_n = -1;
};

RawDyadFile read_dyad_pairs(std::istream& in, const std::string& what) {
  RawDyadFile out;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.rfind("#n=", 0) == 0) {
      out.declared_n = parse_int_or_throw(line.substr(3), what + " '#n=' header");
      continue;
    }
    if (is_blank_or_comment(line)) continue;
    std::istringstream ls(line);
    std::int64_t a = 0, b = 0;
    if (!(ls >> a >> b)) {
      throw ValidationError(what + ": malformed line " + std::to_string(lineno) +
                            ": '" + line + "'");
    }
    std::string trailing;
    if (ls >> trailing) {
      throw ValidationError(what + ": trailing content on line " +
                            std::to_string(lineno));
    }
    out.pairs.emplace_back(a, b);
  }
  return out;
}

Dyad to_canonical(std::int64_t a, std::int64_t b, std::int32_t n,
                  const std::string& what) {
  if (a < 1 || b < 1 || a > n || b > n) {
    throw ValidationError(what + ": node index out of range [1, " +
                          std::to_string(n) + "]: (" + std::to_string(a) + ", " +
                          std::to_string(b) + ")");
  }
  if (a == b) {
    throw ValidationError(what + ": self-loop on node " + std::to_string(a));
  }
  return make_dyad(static_cast<std::int32_t>(a - 1),
                   static_cast<std::int32_t>(b - 1));
}

}  // namespace

Network::Network(std::int32_t n, std::vector<Dyad> edges,
                 std::vector<std::int16_t> covariate,
                 std::int32_t num_categories, const std::vector<Dyad>& unobserved)
    : n_(n), num_categories_(num_categories), edges_(std::move(edges)) {
  if (n_ < 1) throw ValidationError("network: node count must be positive");
  if (num_categories_ < 1)
    throw ValidationError("network: category count must be positive");
  const std::int64_t m = dyad_count(n_);

  if (covariate.empty()) covariate.assign(m, 1);
  if (static_cast<std::int64_t>(covariate.size()) != m)
    throw ValidationError("network: covariate array has wrong size");
  for (std::int64_t k = 0; k < m; ++k) {
    if (covariate[k] < 1 || covariate[k] > num_categories_)
      throw ValidationError("network: covariate value outside [1, " +
                            std::to_string(num_categories_) + "] at dyad " +
                            std::to_string(k));
  }
  covariate_ = std::move(covariate);

  observed_.assign(m, 1);
  for (const Dyad& d : unobserved) {
    if (d.i < 0 || d.j >= n_ || d.i >= d.j)
      throw ValidationError("network: bad unobserved dyad");
    observed_[dyad_index(d)] = 0;
  }

  adjacency_.assign(m, 0);
  neighbor_lists_.assign(n_, {});
  edge_count_per_category_.assign(num_categories_ + 1, 0);
  for (const Dyad& d : edges_) {
    if (d.i < 0 || d.j >= n_ || d.i >= d.j)
      throw ValidationError("network: bad edge dyad");
    const std::int64_t k = dyad_index(d);
    if (adjacency_[k])
      throw ValidationError("network: duplicate edge (" +
                            std::to_string(d.i + 1) + ", " +
                            std::to_string(d.j + 1) + ")");
    if (!observed_[k])
      throw ValidationError("network: edge on unobserved dyad (" +
                            std::to_string(d.i + 1) + ", " +
                            std::to_string(d.j + 1) + ")");
    adjacency_[k] = 1;
    neighbor_lists_[d.i].push_back(d.j);
    neighbor_lists_[d.j].push_back(d.i);
    ++edge_count_per_category_[covariate_[k]];
  }
  std::sort(edges_.begin(), edges_.end(), dyad_less);
  for (auto& lst : neighbor_lists_) std::sort(lst.begin(), lst.end());

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(edges_.size() * 2 + n_);
  for (std::int32_t i = 0; i < n_; ++i) {
    if (!neighbor_lists_[i].empty())
      trip.emplace_back(i, i, static_cast<double>(neighbor_lists_[i].size()));
  }
  for (const Dyad& d : edges_) {
    trip.emplace_back(d.i, d.j, -1.0);
    trip.emplace_back(d.j, d.i, -1.0);
  }
  laplacian_.resize(n_, n_);
  laplacian_.setFromTriplets(trip.begin(), trip.end());
  laplacian_.makeCompressed();

  non_edges_by_category_.assign(num_categories_ + 1, {});
  observed_dyad_count_ = 0;
  for (std::int64_t k = 0; k < m; ++k) {
    if (!observed_[k]) continue;
    ++observed_dyad_count_;
    if (adjacency_[k]) continue;
    const Dyad d = dyad_from_index(k);
    non_edges_.push_back(d);
    non_edges_by_category_[covariate_[k]].push_back(d);
  }
}

const std::vector<Dyad>& Network::observed_non_edges(std::int32_t category) const {
  if (category < 1 || category > num_categories_)
    throw ValidationError("network: category " + std::to_string(category) +
                          " outside [1, " + std::to_string(num_categories_) + "]");
  return non_edges_by_category_[category];
}

std::vector<Dyad> Network::observed_dyads() const {
  std::vector<Dyad> out;
  out.reserve(observed_dyad_count_);
  const std::int64_t m = dyad_count(n_);
  for (std::int64_t k = 0; k < m; ++k) {
    if (observed_[k]) out.push_back(dyad_from_index(k));
  }
  return out;
}

std::vector<Dyad> parse_dyad_lines(std::istream& in, std::int32_t n,
                                   const std::string& what) {
  RawDyadFile raw = read_dyad_pairs(in, what);
  std::vector<Dyad> out;
  out.reserve(raw.pairs.size());
  for (const auto& [a, b] : raw.pairs) out.push_back(to_canonical(a, b, n, what));
  return out;
}

CovariateData parse_covariates(std::istream& in, std::int32_t n) {
  CovariateData out;
  out.codes.assign(dyad_count(n), 1);
  std::vector<char> listed(dyad_count(n), 0);
  bool have_header = false;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.rfind("#C=", 0) == 0) {
      out.num_categories = static_cast<std::int32_t>(
          parse_int_or_throw(line.substr(3), "covariates '#C=' header"));
      if (out.num_categories < 1)
        throw ValidationError("covariates: C must be positive");
      have_header = true;
      continue;
    }
    if (is_blank_or_comment(line)) continue;
    if (!have_header)
      throw ValidationError("covariates: missing '#C=<int>' header");
    std::istringstream ls(line);
    std::int64_t a = 0, b = 0, c = 0;
    if (!(ls >> a >> b >> c))
      throw ValidationError("covariates: malformed line " +
                            std::to_string(lineno) + ": '" + line + "'");
    const Dyad d = to_canonical(a, b, n, "covariates");
    if (c < 1 || c > out.num_categories)
      throw ValidationError("covariates: value " + std::to_string(c) +
                            " outside [1, " + std::to_string(out.num_categories) +
                            "] on line " + std::to_string(lineno));
    const std::int64_t k = dyad_index(d);
    if (listed[k])
      throw ValidationError("covariates: duplicate dyad on line " +
                            std::to_string(lineno));
    listed[k] = 1;
    out.codes[k] = static_cast<std::int16_t>(c);
  }
  if (!have_header)
    throw ValidationError("covariates: missing '#C=<int>' header");
  return out;
}

Network load_network(const std::string& edge_list_path,
                     const std::string& covariate_path,
                     const std::string& mask_path) {
  std::ifstream ef(edge_list_path);
  if (!ef) throw ValidationError("cannot open edge list: " + edge_list_path);
  RawDyadFile raw = read_dyad_pairs(ef, "edge list");

  std::int64_t n64 = raw.declared_n;
  if (n64 < 0) {
    n64 = 0;
    for (const auto& [a, b] : raw.pairs) n64 = std::max({n64, a, b});
    if (n64 == 0)
      throw ValidationError(
          "edge list: no edges and no '#n=' header; node count unknown");
  }
  if (n64 < 1 || n64 > 2'000'000)
    throw ValidationError("edge list: implausible node count " +
                          std::to_string(n64));
  const auto n = static_cast<std::int32_t>(n64);

  std::vector<Dyad> edges;
  edges.reserve(raw.pairs.size());
  for (const auto& [a, b] : raw.pairs)
    edges.push_back(to_canonical(a, b, n, "edge list"));

  CovariateData cov;
  if (!covariate_path.empty()) {
    std::ifstream cf(covariate_path);
    if (!cf)
      throw ValidationError("cannot open covariate file: " + covariate_path);
    cov = parse_covariates(cf, n);
  } else {
    cov.codes.clear();
    cov.num_categories = 1;
  }

  std::vector<Dyad> unobserved;
  if (!mask_path.empty()) {
    std::ifstream mf(mask_path);
    if (!mf) throw ValidationError("cannot open mask file: " + mask_path);
    unobserved = parse_dyad_lines(mf, n, "mask");
  }

  return Network(n, std::move(edges), std::move(cov.codes), cov.num_categories,
                 unobserved);
}

}  // namespace glpm
