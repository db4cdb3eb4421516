#include "glpm/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "glpm/errors.hpp"

namespace glpm {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  out << content;
  if (!out) throw ValidationError("write failed: " + path);
}

void write_edge_list(const std::string& path, const Network& net) {
  std::ostringstream out;
  out << "#n=" << net.n() << "\n";
  for (const Dyad& d : net.edges())
    out << (d.i + 1) << "\t" << (d.j + 1) << "\n";
  write_text_file(path, out.str());
}

void write_covariate_file(const std::string& path, const Network& net) {
  std::ostringstream out;
  out << "#C=" << net.num_categories() << "\n";
  const std::int64_t m = dyad_count(net.n());
  for (std::int64_t k = 0; k < m; ++k) {
    const std::int32_t c = net.category_at(k);
    if (c == 1) continue;
    const Dyad d = dyad_from_index(k);
    out << (d.i + 1) << "\t" << (d.j + 1) << "\t" << c << "\n";
  }
  write_text_file(path, out.str());
}

void write_mask_file(const std::string& path, const Network& net) {
  std::ostringstream out;
  out << "# unobserved dyads\n";
  const std::int64_t m = dyad_count(net.n());
  for (std::int64_t k = 0; k < m; ++k) {
    if (net.is_observed_idx(k)) continue;
    const Dyad d = dyad_from_index(k);
    out << (d.i + 1) << "\t" << (d.j + 1) << "\n";
  }
  write_text_file(path, out.str());
}

void write_truth_csv(const std::string& path,
                     const Eigen::MatrixXd& positions) {
  std::ostringstream out;
  out << "node";
  for (Eigen::Index k = 0; k < positions.cols(); ++k) out << ",z" << (k + 1);
  out << "\r\n";
  for (Eigen::Index i = 0; i < positions.rows(); ++i) {
    out << (i + 1);
    for (Eigen::Index k = 0; k < positions.cols(); ++k)
      out << "," << format_double(positions(i, k));
    out << "\r\n";
  }
  write_text_file(path, out.str());
}

void write_draws_csv(const std::string& path, const ChainOutput& chain,
                     const Network& net,
                     const std::vector<Dyad>& functional_dyads) {
  std::ostringstream out;
  out << "draw";
  const std::size_t c_count =
      chain.tau_draws.empty() ? 0 : chain.tau_draws.front().size();
  for (std::size_t c = 1; c <= c_count; ++c) out << ",tau_" << c;
  out << ",gamma2";
  for (const Dyad& d : functional_dyads)
    out << ",f_" << (d.i + 1) << "_" << (d.j + 1);
  out << "\r\n";

  for (std::int64_t t = 0; t < chain.draw_count(); ++t) {
    out << t;
    for (double tau : chain.tau_draws[t]) out << "," << format_double(tau);
    out << "," << format_double(chain.gamma2_draws[t]);
    for (const Dyad& d : functional_dyads) {
      const double f = dyad_log_prob(chain.position_draws[t],
                                     chain.tau_draws[t], d, net.category(d));
      out << "," << format_double(f);
    }
    out << "\r\n";
  }
  write_text_file(path, out.str());
}

void write_efficiency_csv(const std::string& path,
                          const EfficiencyReport& report) {
  std::ostringstream out;
  out << "i,j,category,ess_target,ess_baseline,seconds_target,"
         "seconds_baseline,relative_efficiency\r\n";
  for (const DyadEfficiency& row : report.rows) {
    out << (row.dyad.i + 1) << "," << (row.dyad.j + 1) << "," << row.category
        << "," << format_double(row.ess_target) << ","
        << format_double(row.ess_baseline) << ","
        << format_double(row.seconds_target) << ","
        << format_double(row.seconds_baseline) << ",";
    if (row.defined) out << format_double(row.ratio);
    out << "\r\n";
  }
  write_text_file(path, out.str());
}

void write_series_ess_csv(const std::string& path,
                          const std::vector<SeriesEss>& rows) {
  std::ostringstream out;
  out << "series,ess,ess_per_second\r\n";
  for (const SeriesEss& row : rows) {
    out << csv_escape(row.name) << "," << format_double(row.ess) << ",";
    if (row.seconds > 0.0) out << format_double(row.ess / row.seconds);
    out << "\r\n";
  }
  write_text_file(path, out.str());
}

}  // namespace glpm
