#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qaf/experiment.hpp"

namespace qaf::bench {

struct IngestResult {
  std::vector<Quaternion> samples;
  std::size_t rows = 0;
};

// Header line required; a leading "index" column is skipped. Without `pure` the first four remaining
// columns are r, i, j, k; with `pure` the first three are i, j, k and r = 0.
// Throws ParseError naming the row and column, ChannelCountError for too few columns, IoError.
[[nodiscard]] IngestResult parse_csv(std::istream& in, bool pure, const std::string& source = "<stream>");
[[nodiscard]] IngestResult ingest_csv(const std::filesystem::path& path, bool pure = false);

// Columns index,r,i,j,k.
void write_stream_csv(std::ostream& os, std::span<const Quaternion> samples);

// Columns step,<ALG>_mse,<ALG>_db,... at 12 significant digits.
void write_curves_csv(std::ostream& os, std::span<const LearningCurve> curves);
[[nodiscard]] std::vector<LearningCurve> read_curves_csv(std::istream& in);
// Columns algorithm,final_mse,convergence_step.
void write_report_csv(std::ostream& os, const SteadyStateReport& report);
// dB learning curves as a standalone SVG.
void write_svg_plot(std::ostream& os, std::span<const LearningCurve> curves);

struct OutputPaths {
  std::filesystem::path curves_csv;
  std::filesystem::path report_csv;
  std::optional<std::filesystem::path> plot_svg;
};

[[nodiscard]] OutputPaths default_output_paths(const std::filesystem::path& dir, bool with_plot = true);

// Throws IoError when a file cannot be written. The plot is best effort.
void emit_outputs(std::span<const LearningCurve> curves, const SteadyStateReport& report, const OutputPaths& paths);

// Flat "key = value" lines, '#' comments. Unknown keys throw ParseError.
void apply_config_text(std::istream& in, ExperimentConfig& config, const std::string& source = "<config>");
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace qaf::bench
