#pragma once

// File formats.
//
// Dataset (CSV):   optional '#' comment lines, a header line "n,k", then one
//                  row per point: x_1,...,x_n,label.
// Points (CSV):    one row of coordinates per point.
// Samples (CSV):   one "x,y" row per sample.
// Network (JSON):  {"format": "resnet-synth-net", "version": 1, ...}; every
//                  number is written in shortest round-trip decimal, so a
//                  reloaded network evaluates bit-identically.

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "resnet_synth/core_net.hpp"
#include "resnet_synth/error.hpp"
#include "resnet_synth/geometry.hpp"
#include "resnet_synth/verify.hpp"

namespace resnet_synth {

inline constexpr const char* kNetworkFormat = "resnet-synth-net";
inline constexpr int kNetworkVersion = 1;

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(ErrorKind::parse, what), byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_number(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) return std::nullopt;
  return v;
}

struct CsvRow {
  std::size_t line = 0;
  std::vector<double> values;
};

inline std::vector<CsvRow> read_numeric_rows(std::istream& in, const std::string& source) {
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    CsvRow row{number, {}};
    std::size_t start = 0;
    while (true) {
      std::size_t comma = view.find(',', start);
      std::string_view field = view.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      auto v = parse_number(field);
      if (!v) {
        throw Error(ErrorKind::parse, source + ":" + std::to_string(number) + ": malformed number '" +
                                          std::string(trim(field)) + "'");
      }
      row.values.push_back(*v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  return in;
}

}  // namespace detail

// Diagnostics name the source and 1-based line of every offending row.
inline LabeledDataset read_dataset(std::istream& in, const std::string& source = "dataset") {
  auto rows = detail::read_numeric_rows(in, source);
  if (rows.empty()) throw Error(ErrorKind::parse, source + ": missing 'n,k' header");
  const auto& header = rows.front();
  auto is_count = [](double v) { return v >= 0.0 && v == static_cast<double>(static_cast<long long>(v)); };
  if (header.values.size() != 2 || !is_count(header.values[0]) || !is_count(header.values[1]) || header.values[0] < 1) {
    throw Error(ErrorKind::parse, source + ":" + std::to_string(header.line) + ": header must be 'n,k'");
  }
  LabeledDataset d;
  d.n = static_cast<std::size_t>(header.values[0]);
  d.k = static_cast<int>(header.values[1]);
  std::vector<std::size_t> lines;
  std::vector<std::string> problems;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = source + ":" + std::to_string(row.line) + ": ";
    if (row.values.size() != d.n + 1) {
      problems.push_back(where + "expected " + std::to_string(d.n + 1) + " fields, got " + std::to_string(row.values.size()));
      continue;
    }
    double label = row.values.back();
    if (!is_count(label) || label < 1 || label > d.k) {
      problems.push_back(where + "label must be an integer in 1.." + std::to_string(d.k));
      continue;
    }
    d.points.emplace_back(row.values.begin(), row.values.end() - 1);
    d.labels.push_back(static_cast<int>(label));
    lines.push_back(row.line);
  }
  if (problems.empty()) {
    std::map<Vector, std::size_t> seen;
    for (std::size_t i = 0; i < d.points.size(); ++i) {
      auto [it, fresh] = seen.emplace(d.points[i], lines[i]);
      if (!fresh) {
        problems.push_back(source + ": duplicate point at lines " + std::to_string(it->second) + " and " +
                           std::to_string(lines[i]));
      }
    }
  }
  if (problems.empty()) {
    for (const auto& p : dataset_problems(d)) problems.push_back(source + ": " + p);
  }
  if (!problems.empty()) {
    std::string msg = "invalid dataset";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorKind::invalid_input, msg);
  }
  return d;
}

inline LabeledDataset load_dataset(const std::string& path) {
  auto in = detail::open_input(path);
  return read_dataset(in, path);
}

inline void write_dataset(std::ostream& out, const LabeledDataset& d) {
  out << d.n << ',' << d.k << '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (double v : d.points[i]) out << format_double(v) << ',';
    out << d.labels[i] << '\n';
  }
}

inline std::vector<Vector> read_points(std::istream& in, const std::string& source = "points") {
  std::vector<Vector> points;
  for (auto& row : detail::read_numeric_rows(in, source)) points.push_back(std::move(row.values));
  return points;
}

inline std::vector<std::pair<double, double>> read_samples(std::istream& in, const std::string& source = "samples") {
  std::vector<std::pair<double, double>> samples;
  for (const auto& row : detail::read_numeric_rows(in, source)) {
    if (row.values.size() != 2) {
      throw Error(ErrorKind::parse, source + ":" + std::to_string(row.line) + ": expected 'x,y'");
    }
    samples.emplace_back(row.values[0], row.values[1]);
  }
  return samples;
}

inline void write_rows(std::ostream& out, const std::vector<Vector>& rows) {
  for (const Vector& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_double(r[i]);
    out << '\n';
  }
}

namespace detail {

using nlohmann::json;

inline json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& e : m.row(i)) entries.push_back(json::array({i, e.col, e.value}));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Matrix matrix_from_json(const json& j) {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> triplets;
  for (const json& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 3) throw Error(ErrorKind::parse, "matrix entry must be [row, col, value]");
    triplets.push_back({{e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()}, e.at(2).get<double>()});
  }
  return Matrix::from_triplets(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(), std::move(triplets));
}

inline json block_to_json(const ResNetBlock& b) {
  json layers = json::array();
  for (const GateLayer& l : b.gate.layers) layers.push_back({{"weights", matrix_to_json(l.weights)}, {"biases", l.biases}});
  return {{"shortcut", matrix_to_json(b.shortcut)},
          {"bias", b.bias},
          {"alpha", b.alpha},
          {"identity", b.identity_shortcut},
          {"gate", {{"input_dim", b.gate.input_dim}, {"output_dim", b.gate.output_dim}, {"layers", std::move(layers)}}}};
}

inline ResNetBlock block_from_json(const json& j) {
  ResNetBlock b;
  b.shortcut = matrix_from_json(j.at("shortcut"));
  b.bias = j.at("bias").get<Vector>();
  b.alpha = j.at("alpha").get<Vector>();
  b.identity_shortcut = j.at("identity").get<bool>();
  const json& g = j.at("gate");
  b.gate.input_dim = g.at("input_dim").get<std::size_t>();
  b.gate.output_dim = g.at("output_dim").get<std::size_t>();
  for (const json& l : g.at("layers")) {
    b.gate.layers.push_back({matrix_from_json(l.at("weights")), l.at("biases").get<Vector>()});
  }
  return b;
}

inline json metadata_to_json(const ConstructionTrace& m) {
  json branches = json::array();
  for (const BranchRecord& b : m.branches) {
    branches.push_back({{"label", b.label},
                        {"polytope", b.polytope},
                        {"offset", b.offset},
                        {"width", b.width},
                        {"margin", b.margin},
                        {"shifts", b.shifts},
                        {"members", b.members}});
  }
  json j = {{"kind", m.kind}, {"branches", std::move(branches)}, {"strategy_log", m.strategy_log}, {"config", m.config}};
  if (m.read_off_offset) j["read_off_offset"] = *m.read_off_offset;
  if (m.domain) j["domain"] = {{"lower", m.domain->first}, {"upper", m.domain->second}};
  return j;
}

inline ConstructionTrace metadata_from_json(const json& j) {
  ConstructionTrace m;
  m.kind = j.at("kind").get<std::string>();
  for (const json& b : j.at("branches")) {
    BranchRecord r;
    r.label = b.at("label").get<int>();
    r.polytope = b.at("polytope").get<std::size_t>();
    r.offset = b.at("offset").get<std::size_t>();
    r.width = b.at("width").get<std::size_t>();
    r.margin = b.at("margin").get<double>();
    r.shifts = b.at("shifts").get<std::vector<Vector>>();
    r.members = b.at("members").get<std::vector<std::size_t>>();
    m.branches.push_back(std::move(r));
  }
  m.strategy_log = j.at("strategy_log").get<std::vector<std::string>>();
  m.config = j.at("config").get<std::map<std::string, std::string>>();
  if (j.contains("read_off_offset")) m.read_off_offset = j.at("read_off_offset").get<double>();
  if (j.contains("domain")) {
    m.domain = std::make_pair(j.at("domain").at("lower").get<Vector>(), j.at("domain").at("upper").get<Vector>());
  }
  return m;
}

}  // namespace detail

inline std::string serialize_net(const ResNet& net) {
  using nlohmann::json;
  json blocks = json::array();
  for (const ResNetBlock& b : net.blocks) blocks.push_back(detail::block_to_json(b));
  json j = {{"format", kNetworkFormat},
            {"version", kNetworkVersion},
            {"widths", net.widths()},
            {"architecture", architecture_string(net)},
            {"blocks", std::move(blocks)},
            {"metadata", detail::metadata_to_json(net.metadata)}};
  return j.dump(1) + "\n";
}

inline ResNet deserialize_net(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("network file: malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what(), e.byte);
  }
  try {
    if (!j.is_object() || j.value("format", std::string()) != kNetworkFormat) {
      throw Error(ErrorKind::parse, "network file: not a resnet-synth network");
    }
    int version = j.at("version").get<int>();
    if (version != kNetworkVersion) {
      throw Error(ErrorKind::unsupported_version, "network file: unsupported version " + std::to_string(version) +
                                                      " (this build reads version " +
                                                      std::to_string(kNetworkVersion) + ")");
    }
    ResNet net;
    for (const json& b : j.at("blocks")) net.blocks.push_back(detail::block_from_json(b));
    net.metadata = detail::metadata_from_json(j.at("metadata"));
    if (j.at("widths").get<std::vector<std::size_t>>() != net.widths()) {
      throw Error(ErrorKind::parse, "network file: widths do not match the stored blocks");
    }
    auto valid = validate_net(net, false);
    if (!valid.ok()) throw Error(ErrorKind::parse, "network file: " + valid.first()->rule + ": " + valid.first()->detail);
    return net;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("network file: schema mismatch: ") + e.what());
  }
}

inline void save_net(const std::string& path, const ResNet& net) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::parse, "cannot write " + path);
  out << serialize_net(net);
  if (!out) throw Error(ErrorKind::parse, "write failed for " + path);
}

inline ResNet load_net(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return deserialize_net(text.str());
}

namespace detail {

inline nlohmann::json check_to_json(const CheckResult& c) {
  return {{"name", c.name}, {"checked", c.checked}, {"violations", c.violations}, {"first_counterexample", c.first_counterexample}};
}

}  // namespace detail

// A report keeps the readout of every point so verdicts can be recomputed.
inline std::string serialize_report(const VerificationReport& report, const std::vector<CheckResult>& extra = {}) {
  using nlohmann::json;
  json points = json::array();
  for (const PointRecord& p : report.points) {
    json rec = {{"id", p.id},
                {"label", p.label},
                {"readout", p.readout},
                {"verdict", p.verdict == Verdict::pass ? "pass" : "fail"}};
    if (!p.reason.empty()) rec["reason"] = p.reason;
    if (p.trace) rec["trace"] = p.trace->layers;
    points.push_back(std::move(rec));
  }
  json checks = json::array();
  for (const CheckResult& c : report.checks) checks.push_back(detail::check_to_json(c));
  for (const CheckResult& c : extra) checks.push_back(detail::check_to_json(c));
  json j = {{"tolerance", report.tolerance},
            {"passed", report.passed},
            {"failed", report.failed},
            {"total", report.points.size()},
            {"points", std::move(points)},
            {"checks", std::move(checks)}};
  return j.dump(1) + "\n";
}

inline VerificationReport deserialize_report(std::string_view text) {
  using nlohmann::json;
  try {
    json j = json::parse(text);
    VerificationReport r;
    r.tolerance = j.at("tolerance").get<double>();
    r.passed = j.at("passed").get<std::size_t>();
    r.failed = j.at("failed").get<std::size_t>();
    for (const json& p : j.at("points")) {
      PointRecord rec;
      rec.id = p.at("id").get<std::size_t>();
      rec.label = p.at("label").get<int>();
      rec.readout = p.at("readout").get<Vector>();
      rec.verdict = p.at("verdict").get<std::string>() == "pass" ? Verdict::pass : Verdict::fail;
      rec.reason = p.value("reason", std::string());
      r.points.push_back(std::move(rec));
    }
    for (const json& c : j.at("checks")) {
      CheckResult check(c.at("name").get<std::string>());
      check.checked = c.at("checked").get<std::size_t>();
      check.violations = c.at("violations").get<std::size_t>();
      check.first_counterexample = c.at("first_counterexample").get<std::string>();
      r.checks.push_back(std::move(check));
    }
    return r;
  } catch (const json::parse_error& e) {
    throw ParseError("report: malformed JSON at byte " + std::to_string(e.byte), e.byte);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("report: schema mismatch: ") + e.what());
  }
}

}  // namespace resnet_synth
