#ifndef KPGNN_RESULTS_HPP
#define KPGNN_RESULTS_HPP

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kpgnn/error.hpp"

namespace kpgnn {

inline constexpr std::string_view kVersion = "0.1.0";

/// Rows of (parameter values, metric, value). Parameters are kept as strings
/// so one table can mix methods, kernels and integers.
struct ResultTable {
  struct Row {
    std::vector<std::string> params;
    std::string metric;
    double value = 0.0;

    friend bool operator==(const Row&, const Row&) = default;
  };

  std::vector<std::string> param_names;
  std::vector<Row> rows;
  std::map<std::string, std::string> metadata;

  void add(std::vector<std::string> params, std::string metric, double value) {
    if (params.size() != param_names.size()) {
      throw Error(ErrorCode::kInvalidArgument, "row has " + std::to_string(params.size()) +
                                                   " parameters, table has " +
                                                   std::to_string(param_names.size()));
    }
    rows.push_back({std::move(params), std::move(metric), value});
  }

  /// First value of `metric` whose params match every (name, value) filter.
  std::optional<double> find(std::string_view metric,
                             const std::vector<std::pair<std::string, std::string>>& filter = {}) const {
    for (const auto& row : rows) {
      if (row.metric != metric) continue;
      bool ok = true;
      for (const auto& [name, want] : filter) {
        const auto it = std::find(param_names.begin(), param_names.end(), name);
        if (it == param_names.end() || row.params[static_cast<std::size_t>(it - param_names.begin())] != want) {
          ok = false;
          break;
        }
      }
      if (ok) return row.value;
    }
    return std::nullopt;
  }

  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

/// Shortest text that parses back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline std::string to_csv(const ResultTable& t) {
  std::string out;
  for (const auto& name : t.param_names) out += detail::csv_field(name) + ",";
  out += "metric,value\r\n";
  for (const auto& row : t.rows) {
    for (const auto& p : row.params) out += detail::csv_field(p) + ",";
    out += detail::csv_field(row.metric) + "," + format_number(row.value) + "\r\n";
  }
  return out;
}

inline nlohmann::json to_json(const ResultTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json params = nlohmann::json::object();
    for (std::size_t i = 0; i < t.param_names.size(); ++i) params[t.param_names[i]] = row.params[i];
    rows.push_back({{"params", params}, {"metric", row.metric}, {"value", row.value}});
  }
  return {{"param_names", t.param_names}, {"metadata", t.metadata}, {"rows", rows}};
}

inline ResultTable table_from_json(const nlohmann::json& j) {
  try {
    ResultTable t;
    t.param_names = j.at("param_names").get<std::vector<std::string>>();
    t.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& r : j.at("rows")) {
      std::vector<std::string> params;
      for (const auto& name : t.param_names) params.push_back(r.at("params").at(name).get<std::string>());
      t.add(std::move(params), r.at("metric").get<std::string>(), r.at("value").get<double>());
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedLine, std::string("result table json: ") + e.what());
  }
}

struct HeatmapAxes {
  std::string x = "n";
  std::string y = "K";
  std::string metric = "node_pair_indistinguishable_fraction";
  std::string title = "indistinguishable node pairs";
};

/// Grid of cells, x parameter across, y parameter upward, value as fill
/// (white = 0, dark = 1). Axis values are ordered numerically when they parse.
inline std::string to_svg_heatmap(const ResultTable& t, const HeatmapAxes& axes = {}) {
  const auto col = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(t.param_names.begin(), t.param_names.end(), name);
    if (it == t.param_names.end()) throw Error(ErrorCode::kInvalidArgument, "no parameter '" + name + "'");
    return static_cast<std::size_t>(it - t.param_names.begin());
  };
  const std::size_t xi = col(axes.x);
  const std::size_t yi = col(axes.y);
  auto numeric_less = [](const std::string& a, const std::string& b) {
    double da = 0, db = 0;
    const bool pa = std::from_chars(a.data(), a.data() + a.size(), da).ec == std::errc{};
    const bool pb = std::from_chars(b.data(), b.data() + b.size(), db).ec == std::errc{};
    if (pa && pb && da != db) return da < db;
    return a < b;
  };
  std::set<std::string, decltype(numeric_less)> xs(numeric_less), ys(numeric_less);
  std::map<std::pair<std::string, std::string>, double> cells;
  for (const auto& row : t.rows) {
    if (row.metric != axes.metric) continue;
    xs.insert(row.params[xi]);
    ys.insert(row.params[yi]);
    cells[{row.params[xi], row.params[yi]}] = row.value;
  }
  const int cell = 60, left = 60, top = 40, bottom = 50, right = 20;
  const int width = left + cell * static_cast<int>(xs.size()) + right;
  const int height = top + cell * static_cast<int>(ys.size()) + bottom;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << axes.title << "</text>\n";
  int xpos = 0;
  for (const auto& x : xs) {
    int ypos = 0;
    for (auto it = ys.rbegin(); it != ys.rend(); ++it, ++ypos) {
      const auto found = cells.find({x, *it});
      if (found == cells.end()) continue;
      const double v = std::clamp(found->second, 0.0, 1.0);
      const int shade = 255 - static_cast<int>(v * 255.0 + 0.5);
      const int px = left + xpos * cell;
      const int py = top + ypos * cell;
      svg << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"rgb(" << shade << "," << shade << ",255)\" stroke=\"#888\"/>\n";
      char label[32];
      std::snprintf(label, sizeof(label), "%.4f", found->second);
      svg << "<text x=\"" << px + cell / 2 << "\" y=\"" << py + cell / 2 + 4
          << "\" text-anchor=\"middle\" fill=\"" << (v > 0.5 ? "#fff" : "#000") << "\">" << label
          << "</text>\n";
    }
    svg << "<text x=\"" << left + xpos * cell + cell / 2 << "\" y=\"" << top + cell * static_cast<int>(ys.size()) + 18
        << "\" text-anchor=\"middle\">" << x << "</text>\n";
    ++xpos;
  }
  int ypos = 0;
  for (auto it = ys.rbegin(); it != ys.rend(); ++it, ++ypos)
    svg << "<text x=\"" << left - 8 << "\" y=\"" << top + ypos * cell + cell / 2 + 4
        << "\" text-anchor=\"end\">" << *it << "</text>\n";
  svg << "<text x=\"" << left + cell * static_cast<int>(xs.size()) / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\">" << axes.x << "</text>\n";
  svg << "<text x=\"15\" y=\"" << top + cell * static_cast<int>(ys.size()) / 2 << "\">" << axes.y << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

enum class OutputFormat { kCsv, kJson, kSvg };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  if (s == "svg") return OutputFormat::kSvg;
  throw Error(ErrorCode::kInvalidArgument, "unknown format '" + std::string(s) + "'");
}

inline std::string render(const ResultTable& t, OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv: return to_csv(t);
    case OutputFormat::kJson: return to_json(t).dump(2) + "\n";
    case OutputFormat::kSvg: return to_svg_heatmap(t);
  }
  return {};
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

/// Writes `<stem>.<ext>` for every format.
inline std::vector<std::string> emit_outputs(const ResultTable& t, const std::string& stem,
                                             const std::vector<OutputFormat>& formats) {
  std::vector<std::string> written;
  for (auto f : formats) {
    const std::string path = stem + (f == OutputFormat::kCsv ? ".csv" : f == OutputFormat::kJson ? ".json" : ".svg");
    write_file(path, render(t, f));
    written.push_back(path);
  }
  return written;
}

}  // namespace kpgnn

#endif  // KPGNN_RESULTS_HPP
