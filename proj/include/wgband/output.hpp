#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wgband/config.hpp"
#include "wgband/floquet.hpp"

namespace wgband {

// Writes content atomically enough for our purposes (truncate + write);
// throws SolverError when the file cannot be produced.
void write_text_file(const std::string& path, const std::string& content);

// CSV with a header row and 12-significant-digit values, byte-deterministic.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

// Same table as a gnuplot-ready whitespace-separated .dat with a '#' header.
std::string gnuplot_table(const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows);

std::string band_csv(const BandDiagram& diagram);
std::vector<std::string> band_header(const BandDiagram& diagram);
std::vector<std::vector<double>> band_rows(const BandDiagram& diagram);

// Common report envelope: tool/version/command, config hash, module versions,
// and the effective config. Deterministic (no timestamps).
nlohmann::json report_skeleton(const ExperimentConfig& config,
                               const std::string& command);

}  // namespace wgband
