#include "qaf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qaf/error.hpp"

namespace qaf::bench {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

template <typename Int>
std::optional<Int> to_integer(std::string_view s) {
  s = trim(s);
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::optional<bool> to_bool(std::string_view s) {
  const std::string v = lower(trim(s));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  return std::nullopt;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

IngestResult parse_csv(std::istream& in, bool pure, const std::string& source) {
  const std::size_t needed = pure ? 3 : 4;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t skip = 0;
  IngestResult result;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string_view> fields = split(line, ',');
    if (!have_header) {
      have_header = true;
      skip = (!fields.empty() && lower(fields.front()) == "index") ? 1 : 0;
      if (fields.size() < needed + skip) {
        throw Error(ErrorKind::ChannelCountError, source + ": header has " + std::to_string(fields.size() - skip) +
                                                      " data columns, need " + std::to_string(needed));
      }
      continue;
    }
    if (fields.size() < needed + skip) {
      throw Error(ErrorKind::ChannelCountError, source + ": row " + std::to_string(line_no) + " has " +
                                                    std::to_string(fields.size()) + " columns");
    }
    double v[4] = {0, 0, 0, 0};
    for (std::size_t c = 0; c < needed; ++c) {
      const auto parsed = to_double(fields[skip + c]);
      if (!parsed) {
        throw Error(ErrorKind::ParseError, source + ": row " + std::to_string(line_no) + " column " +
                                               std::to_string(skip + c + 1) + ": '" + std::string(fields[skip + c]) +
                                               "' is not a number");
      }
      v[c] = *parsed;
    }
    result.samples.push_back(pure ? Quaternion{0.0, v[0], v[1], v[2]} : Quaternion{v[0], v[1], v[2], v[3]});
  }
  if (!have_header) throw Error(ErrorKind::ParseError, source + ": missing header line");
  result.rows = result.samples.size();
  return result;
}

IngestResult ingest_csv(const std::filesystem::path& path, bool pure) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return parse_csv(in, pure, path.string());
}

void write_stream_csv(std::ostream& os, std::span<const Quaternion> samples) {
  os << "index,r,i,j,k\n";
  char buf[160];
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const Quaternion& q = samples[n];
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.12g,%.12g\n", n, q.r, q.i, q.j, q.k);
    os << buf;
  }
  if (!os) throw Error(ErrorKind::IoError, "failed writing sample stream");
}

void write_curves_csv(std::ostream& os, std::span<const LearningCurve> curves) {
  os << "step";
  for (const auto& c : curves) {
    const std::string name(filters::to_string(c.algorithm));
    os << ',' << name << "_mse," << name << "_db";
  }
  os << '\n';
  std::size_t steps = 0;
  for (const auto& c : curves) steps = std::max(steps, c.mse.size());
  char buf[64];
  for (std::size_t k = 0; k < steps; ++k) {
    os << k;
    for (const auto& c : curves) {
      const double v = k < c.mse.size() ? c.mse[k] : std::nan("");
      std::snprintf(buf, sizeof buf, ",%.12g,%.12g", v, to_db(v));
      os << buf;
    }
    os << '\n';
  }
  if (!os) throw Error(ErrorKind::IoError, "failed writing learning curves");
}

std::vector<LearningCurve> read_curves_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "learning-curve file is empty");
  const std::vector<std::string_view> header = split(line, ',');
  std::vector<LearningCurve> curves;
  for (std::size_t c = 1; c + 1 < header.size(); c += 2) {
    std::string_view name = header[c];
    if (name.size() < 4 || name.substr(name.size() - 4) != "_mse") {
      throw Error(ErrorKind::ParseError, "unexpected column '" + std::string(name) + "'");
    }
    name.remove_suffix(4);
    const auto algo = filters::parse_algorithm(name);
    if (!algo) throw Error(ErrorKind::ParseError, "unknown algorithm '" + std::string(name) + "'");
    curves.push_back(LearningCurve{*algo, 0.0, {}, 0});
  }
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string_view> fields = split(line, ',');
    if (fields.size() != 1 + 2 * curves.size()) {
      throw Error(ErrorKind::ParseError, "row " + std::to_string(row) + " has the wrong column count");
    }
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const auto v = to_double(fields[1 + 2 * c]);
      if (!v) throw Error(ErrorKind::ParseError, "row " + std::to_string(row) + " has a malformed value");
      curves[c].mse.push_back(*v);
    }
  }
  return curves;
}

void write_report_csv(std::ostream& os, const SteadyStateReport& report) {
  os << "algorithm,final_mse,convergence_step\n";
  char buf[160];
  for (const auto& e : report.entries) {
    std::snprintf(buf, sizeof buf, "%s,%.12g,%zu\n", std::string(filters::to_string(e.algorithm)).c_str(),
                  e.final_mse, e.convergence_step);
    os << buf;
  }
  if (!os) throw Error(ErrorKind::IoError, "failed writing steady-state report");
}

void write_svg_plot(std::ostream& os, std::span<const LearningCurve> curves) {
  constexpr double kWidth = 800, kHeight = 480, kMargin = 50;
  constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::size_t steps = 0;
  double lo = 1e300, hi = -1e300;
  for (const auto& c : curves) {
    steps = std::max(steps, c.mse.size());
    for (double v : c.mse) {
      const double db = to_db(v);
      if (db > -299.0) {
        lo = std::min(lo, db);
        hi = std::max(hi, db);
      }
    }
  }
  if (!(hi > lo)) {
    lo = -1.0;
    hi = 1.0;
  }
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"20\" font-size=\"12\">MSE [dB], %.3g to %.3g over %zu steps</text>\n",
                kMargin, lo, hi, steps);
  os << buf;
  const std::size_t stride = std::max<std::size_t>(1, steps / 1000);
  for (std::size_t c = 0; c < curves.size(); ++c) {
    os << "<polyline fill=\"none\" stroke=\"" << kColors[c % 5] << "\" stroke-width=\"1\" points=\"";
    for (std::size_t k = 0; k < curves[c].mse.size(); k += stride) {
      const double x = kMargin + (kWidth - 2 * kMargin) * static_cast<double>(k) / std::max<double>(1.0, steps - 1.0);
      const double db = std::clamp(to_db(curves[c].mse[k]), lo, hi);
      const double y = kHeight - kMargin - (kHeight - 2 * kMargin) * (db - lo) / (hi - lo);
      std::snprintf(buf, sizeof buf, "%.1f,%.1f ", x, y);
      os << buf;
    }
    os << "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" font-size=\"12\" fill=\"%s\">%s</text>\n",
                  kWidth - 150, 40.0 + 16.0 * static_cast<double>(c), kColors[c % 5],
                  std::string(filters::to_string(curves[c].algorithm)).c_str());
    os << buf;
  }
  os << "</svg>\n";
}

OutputPaths default_output_paths(const std::filesystem::path& dir, bool with_plot) {
  OutputPaths p;
  p.curves_csv = dir / "learning_curves.csv";
  p.report_csv = dir / "steady_state.csv";
  if (with_plot) p.plot_svg = dir / "learning_curves.svg";
  return p;
}

void emit_outputs(std::span<const LearningCurve> curves, const SteadyStateReport& report, const OutputPaths& paths) {
  {
    std::ofstream out = open_for_write(paths.curves_csv);
    write_curves_csv(out, curves);
  }
  {
    std::ofstream out = open_for_write(paths.report_csv);
    write_report_csv(out, report);
  }
  if (paths.plot_svg) {
    std::ofstream out(*paths.plot_svg);
    if (out) write_svg_plot(out, curves);
  }
}

void apply_config_text(std::istream& in, ExperimentConfig& config, const std::string& source) {
  std::optional<SignalKind> signal;
  std::optional<double> mu;
  std::vector<std::pair<Algorithm, std::optional<double>>> algos;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::ParseError, source + ": line " + std::to_string(line_no) + ": " + what);
  };
  auto number = [&](std::string_view v) {
    const auto d = to_double(v);
    if (!d) fail("'" + std::string(v) + "' is not a number");
    return *d;
  };
  auto count = [&](std::string_view v) {
    const auto n = to_integer<std::uint64_t>(v);
    if (!n) fail("'" + std::string(v) + "' is not a non-negative integer");
    return *n;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    const std::string key = lower(trim(view.substr(0, eq)));
    const std::string_view value = trim(view.substr(eq + 1));
    if (key == "signal") {
      signal = parse_signal(value);
      if (!signal) fail("unknown signal '" + std::string(value) + "'");
    } else if (key == "algo" || key == "algorithm") {
      const auto colon = value.find(':');
      const auto algo = filters::parse_algorithm(trim(value.substr(0, colon)));
      if (!algo) fail("unknown algorithm '" + std::string(value) + "'");
      std::optional<double> own_mu;
      if (colon != std::string_view::npos) own_mu = number(value.substr(colon + 1));
      algos.emplace_back(*algo, own_mu);
    } else if (key == "mu") {
      mu = number(value);
    } else if (key == "order") {
      config.order = count(value);
    } else if (key == "trials") {
      config.trials = count(value);
    } else if (key == "steps") {
      config.steps = count(value);
    } else if (key == "seed") {
      config.seed = count(value);
    } else if (key == "horizon") {
      config.horizon = count(value);
    } else if (key == "final_window") {
      config.final_window = count(value);
    } else if (key == "threads") {
      config.threads = static_cast<unsigned>(count(value));
    } else if (key == "lorenz_dt") {
      config.signal.lorenz_dt = number(value);
    } else if (key == "target_rs") {
      config.signal.target_r_s = number(value);
    } else if (key == "ma_input_variance") {
      config.signal.ma_input_variance = number(value);
    } else if (key == "csv") {
      config.signal.csv_path = std::string(value);
    } else if (key == "pure") {
      const auto b = to_bool(value);
      if (!b) fail("'" + std::string(value) + "' is not a boolean");
      config.signal.pure = *b;
    } else if (key == "record_weights") {
      const auto b = to_bool(value);
      if (!b) fail("'" + std::string(value) + "' is not a boolean");
      config.record_weights = *b;
    } else if (key == "out_dir") {
      config.out_dir = std::string(value);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (signal) {
    config.signal.kind = *signal;
    if (algos.empty()) config.algorithms = default_config(*signal).algorithms;
  }
  if (!algos.empty()) {
    config.algorithms.clear();
    for (const auto& [algo, own_mu] : algos) {
      config.algorithms.push_back({algo, own_mu.value_or(mu.value_or(default_step_size(config.signal.kind)))});
    }
  } else if (mu) {
    for (auto& run : config.algorithms) run.mu = *mu;
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  ExperimentConfig config = default_config(SignalKind::AR4);
  apply_config_text(in, config, path.string());
  return config;
}

}  // namespace qaf::bench
