#include "wgband/output.hpp"

#include <fstream>

#include "wgband/version.hpp"

namespace wgband {

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SolverError("cannot open output file " + path);
  out << content;
  out.flush();
  if (!out) throw SolverError("failed writing output file " + path);
}

namespace {

std::string table(const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& rows, char sep,
                  const char* prefix) {
  std::string s = prefix;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) s += sep;
    s += header[i];
  }
  s += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += sep;
      s += format_sig(row[i], 12);
    }
    s += '\n';
  }
  return s;
}

}  // namespace

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  return table(header, rows, ',', "");
}

std::string gnuplot_table(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows) {
  return table(header, rows, ' ', "# ");
}

std::vector<std::string> band_header(const BandDiagram& diagram) {
  std::vector<std::string> h{"eta"};
  for (int p = 1; p <= diagram.p_max; ++p) h.push_back("Lambda_" + std::to_string(p));
  return h;
}

std::vector<std::vector<double>> band_rows(const BandDiagram& diagram) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < diagram.eta_grid.size(); ++i) {
    std::vector<double> row{diagram.eta_grid[i]};
    for (int p = 0; p < diagram.p_max; ++p)
      row.push_back(diagram.lambdas(p, static_cast<int>(i)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string band_csv(const BandDiagram& diagram) {
  return csv_table(band_header(diagram), band_rows(diagram));
}

nlohmann::json report_skeleton(const ExperimentConfig& config,
                               const std::string& command) {
  nlohmann::json j;
  j["tool"] = "wgband";
  j["version"] = kToolkitVersion;
  j["command"] = command;
  j["config_hash"] = config_hash(config);
  nlohmann::json mods;
  for (const auto& [name, ver] : module_versions()) mods[name] = ver;
  j["modules"] = mods;
  j["config"] = nlohmann::json::parse(canonical_config(config));
  return j;
}

}  // namespace wgband
