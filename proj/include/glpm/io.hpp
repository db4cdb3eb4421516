#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "glpm/chain.hpp"
#include "glpm/diagnostics.hpp"
#include "glpm/network.hpp"

namespace glpm {

/// %.17g rendering (round-trip exact for doubles).
std::string format_double(double value);

/// RFC-4180 field quoting (applied only when the field needs it).
std::string csv_escape(const std::string& field);

void write_text_file(const std::string& path, const std::string& content);

/// "#n=<n>" header then one "i<TAB>j" line per edge, 1-based, canonical order.
void write_edge_list(const std::string& path, const Network& net);

/// "#C=<C>" header then "i<TAB>j<TAB>c" for every dyad with c != 1.
void write_covariate_file(const std::string& path, const Network& net);

/// One "i<TAB>j" line per unobserved dyad.
void write_mask_file(const std::string& path, const Network& net);

/// CSV node,z1..zd of ground-truth positions (1-based node ids).
void write_truth_csv(const std::string& path, const Eigen::MatrixXd& positions);

/// CSV of thinned draws: draw, tau_1..tau_C, gamma2, then one
/// f_<i>_<j> column per functional dyad (1-based ids).
void write_draws_csv(const std::string& path, const ChainOutput& chain,
                     const Network& net,
                     const std::vector<Dyad>& functional_dyads);

/// CSV i,j,category,ess_target,ess_baseline,seconds_target,seconds_baseline,
/// relative_efficiency; undefined ratios render as empty fields.
void write_efficiency_csv(const std::string& path,
                          const EfficiencyReport& report);

struct SeriesEss {
  std::string name;
  double ess = 0.0;
  double seconds = 0.0;
};

/// CSV series,ess,ess_per_second.
void write_series_ess_csv(const std::string& path,
                          const std::vector<SeriesEss>& rows);

}  // namespace glpm
