#pragma once

// Command-line driver. Defaults for any flag can come from a TOML/INI config
// file given by --config or the RESNET_SYNTH_CONFIG environment variable, one
// section per subcommand:
//
//   [construct]
//   cover = "greedy"
//   margin = 2.0

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resnet_synth/approx.hpp"
#include "resnet_synth/construct.hpp"
#include "resnet_synth/error.hpp"
#include "resnet_synth/io.hpp"
#include "resnet_synth/render.hpp"
#include "resnet_synth/synthesize.hpp"
#include "resnet_synth/verify.hpp"

namespace resnet_synth {

inline constexpr const char* kConfigEnv = "RESNET_SYNTH_CONFIG";

enum ExitCode : int { exit_ok = 0, exit_verification = 1, exit_usage = 2, exit_infeasible = 3 };

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::verification_failed:
      return exit_verification;
    case ErrorKind::infeasible:
      return exit_infeasible;
    default:
      return exit_usage;
  }
}

namespace detail {

inline void write_output(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::parse, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::parse, "write failed for " + path);
}

inline void write_network(const std::string& path, const ResNet& net) {
  auto valid = validate_net(net);
  if (!valid.ok()) {
    throw Error(ErrorKind::verification_failed,
                "refusing to write malformed network: " + valid.first()->rule + ": " + valid.first()->detail);
  }
  save_net(path, net);
}

template <typename T>
std::vector<T> split_list(const std::string& text, std::size_t expected, const std::string& flag) {
  std::vector<T> out;
  std::stringstream s(text);
  std::string field;
  while (std::getline(s, field, ',')) {
    auto v = parse_number(field);
    if (!v) throw Error(ErrorKind::invalid_input, flag + ": malformed value '" + field + "'");
    out.push_back(static_cast<T>(*v));
  }
  if (out.size() != expected) {
    throw Error(ErrorKind::invalid_input, flag + " expects " + std::to_string(expected) + " comma-separated values");
  }
  return out;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Training-free ResNet synthesis and verification"};
  app.require_subcommand(1);
  const char* env_config = std::getenv(kConfigEnv);
  app.set_config("--config", env_config ? env_config : "", "TOML/INI file with flag defaults");

  const std::map<std::string, CoverStrategy> covers{{"per-point", CoverStrategy::per_point},
                                                    {"greedy", CoverStrategy::greedy}};
  const std::map<std::string, ZeroExclusion> exclusions{{"lp-first", ZeroExclusion::lp_first},
                                                        {"or-gate", ZeroExclusion::or_gate_always}};

  SynthesisConfig cfg;
  std::string dataset_path, net_path, points_path, output_path, samples_path, bounds_text = "0,1,0,1",
                                                                             res_text = "200,200", overlay_path;
  std::size_t levels = 0;
  double steepness = kDefaultSteepness;
  double tau = kZeroTolerance;

  auto* construct = app.add_subcommand("construct", "build a classifier network from a labeled dataset");
  construct->add_option("dataset", dataset_path, "dataset CSV")->required();
  construct->add_option("--cover", cfg.cover, "polytope cover strategy")
      ->transform(CLI::CheckedTransformer(covers, CLI::ignore_case));
  construct->add_option("--zero-exclusion", cfg.zero_exclusion, "how later blocks shut off the origin")
      ->transform(CLI::CheckedTransformer(exclusions, CLI::ignore_case));
  construct->add_option("--margin", cfg.margin, "survivor margin mu");
  construct->add_option("--alpha-safety", cfg.alpha_safety, "gate scale safety factor");
  construct->add_option("--domain-padding", cfg.domain_padding, "padding of the tracked input domain");
  construct->add_option("-o,--output", output_path, "network file")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a network on points");
  eval->add_option("net", net_path, "network file")->required();
  eval->add_option("points", points_path, "points CSV")->required();
  eval->add_option("-o,--output", output_path, "outputs CSV (default stdout)");

  auto* verify = app.add_subcommand("verify", "check a network against a labeled dataset");
  verify->add_option("net", net_path, "network file")->required();
  verify->add_option("dataset", dataset_path, "dataset CSV")->required();
  verify->add_option("--tau", tau, "zero tolerance");
  verify->add_option("-o,--output", output_path, "report JSON");

  auto* approx = app.add_subcommand("approx", "build a piecewise-constant approximator from samples");
  approx->add_option("--samples", samples_path, "samples CSV with x,y rows")->required();
  approx->add_option("--levels", levels, "number of plateaus N")->required()->check(CLI::PositiveNumber);
  approx->add_option("--steepness", steepness, "ramp steepness s");
  approx->add_option("-o,--output", output_path, "network file")->required();

  auto* render = app.add_subcommand("render", "draw the decision regions of a 2-D classifier as SVG");
  render->add_option("net", net_path, "network file")->required();
  render->add_option("--bounds", bounds_text, "x0,x1,y0,y1");
  render->add_option("--res", res_text, "W,H grid resolution");
  render->add_option("--dataset", overlay_path, "dataset CSV to overlay");
  render->add_option("-o,--output", output_path, "SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e_stream;
    int code = app.exit(e, o, e_stream);
    out << o.str();
    err << e_stream.str();
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*construct) {
      LabeledDataset d = load_dataset(dataset_path);
      Synthesis s = synthesize(d, cfg);
      detail::write_network(output_path, s.net);
      out << "architecture " << architecture_string(s.net) << '\n';
      out << s.report.passed << '/' << d.size() << " pass\n";
      for (const auto& line : s.net.metadata.strategy_log) out << line << '\n';
      return exit_ok;
    }
    if (*eval) {
      ResNet net = load_net(net_path);
      auto in = detail::open_input(points_path);
      std::vector<Vector> rows;
      const bool approximator = net.metadata.kind == "approximator";
      std::optional<Approximator> a;
      if (approximator) a = approximator_from_net(net);
      for (const Vector& p : read_points(in, points_path)) {
        if (p.size() != net.input_dim()) {
          throw Error(ErrorKind::dimension_mismatch, points_path + ": point has " + std::to_string(p.size()) +
                                                         " coordinates, network expects " +
                                                         std::to_string(net.input_dim()));
        }
        Vector y = eval_net(net, p).output;
        rows.push_back(approximator ? Vector{a->read_off(y)} : y);
      }
      std::ostringstream text;
      write_rows(text, rows);
      detail::write_output(output_path, text.str(), out);
      return exit_ok;
    }
    if (*verify) {
      ResNet net = load_net(net_path);
      LabeledDataset d = load_dataset(dataset_path);
      VerificationReport report = verify_dataset(net, d, tau);
      std::vector<CheckResult> extra;
      if (net.metadata.kind == "classifier" && report.ok()) {
        auto excl = verify_exclusion(net, d, tau);
        auto pass = verify_pass_through(net, d);
        for (const auto* c : {&excl.final_zero, &excl.monotone, &excl.covered_positive, &pass.affine, &pass.floor}) {
          extra.push_back(*c);
        }
      }
      bool ok = report.ok();
      for (const auto& c : extra) ok = ok && c.passed();
      if (!output_path.empty()) detail::write_output(output_path, serialize_report(report, extra), out);
      out << report.passed << '/' << d.size() << " pass\n";
      for (const auto& c : report.checks) {
        if (!c.passed()) err << "check failed: " << c.name << ": " << c.first_counterexample << '\n';
      }
      for (const auto& c : extra) {
        if (!c.passed()) err << "check failed: " << c.name << ": " << c.first_counterexample << '\n';
      }
      for (const auto& p : report.points) {
        if (p.verdict == Verdict::fail) err << "point " << p.id << " (label " << p.label << "): " << p.reason << '\n';
      }
      return ok ? exit_ok : exit_verification;
    }
    if (*approx) {
      auto in = detail::open_input(samples_path);
      auto samples = read_samples(in, samples_path);
      PiecewiseConstSpec spec = fit_pwc(samples, levels);
      spec.steepness = steepness;
      Approximator a = build_approximator(spec);
      detail::write_network(output_path, a.net);
      double worst = 0.0;
      for (auto [x, y] : samples) worst = std::max(worst, std::abs(a(x) - y));
      out << "architecture " << architecture_string(a.net) << '\n';
      out << "levels " << spec.levels.size() << ", max sample error " << format_double(worst) << '\n';
      return exit_ok;
    }
    if (*render) {
      ResNet net = load_net(net_path);
      auto b = detail::split_list<double>(bounds_text, 4, "--bounds");
      auto r = detail::split_list<double>(res_text, 2, "--res");
      if (r[0] < 1 || r[1] < 1 || r[0] != static_cast<std::size_t>(r[0]) || r[1] != static_cast<std::size_t>(r[1])) {
        throw Error(ErrorKind::invalid_input, "--res expects two positive integers");
      }
      std::optional<LabeledDataset> overlay;
      if (!overlay_path.empty()) overlay = load_dataset(overlay_path);
      std::string svg = render_regions_svg(net, {b[0], b[1], b[2], b[3]}, static_cast<std::size_t>(r[0]),
                                           static_cast<std::size_t>(r[1]), overlay ? &*overlay : nullptr);
      detail::write_output(output_path, svg, out);
      return exit_ok;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return exit_usage;
}

}  // namespace resnet_synth
