// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "monoadv/config.hpp"
#include "monoadv/error.hpp"
#include "monoadv/experiments.hpp"
#include "monoadv/pipeline.hpp"
#include "monoadv/report.hpp"

namespace fs = std::filesystem;
using namespace monoadv;

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

int report_error(ErrorCode code, const std::string& message) {
  std::cerr << "error code=" << to_string(code) << " message=" << quote(message) << '\n';
  return 2;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path.string());
  return out;
}

std::string stem(const ExperimentConfig& cfg) {
  return std::string(to_string(cfg.experiment)) + "_n" + std::to_string(cfg.n);
}

int run_command(const std::string& config_path, std::string out_dir, int workers,
                bool svg) {
  const RunConfig run = parse_config(read_file(config_path));
  if (out_dir.empty()) {
    const char* env = std::getenv("MONOADV_OUT_DIR");
    out_dir = env && *env ? env : "out";
  }
  const fs::path dir(out_dir);
  const std::string exp_name(to_string(run.experiments.front().experiment));

  RunManifest manifest{config_path, resolved_config(run), run.experiments.front().seed,
                       out_dir, {"manifest.txt", "summary.csv"}};
  for (std::size_t i = 0; i < run.experiments.size(); ++i) {
    const auto& cfg = run.experiments[i];
    manifest.files.push_back(stem(cfg) + "_trials.csv");
    const bool has_transcripts = cfg.experiment != ExperimentKind::coupon;
    for (std::uint64_t t = 0; has_transcripts && t < std::min(run.transcripts, cfg.trials); ++t) {
      manifest.files.push_back("transcripts/" + stem(cfg) + "_trial" + std::to_string(t) + ".txt");
    }
  }
  if (svg) manifest.files.push_back(exp_name + "_error_vs_n.svg");

  std::error_code ec;
  fs::create_directories(dir / "transcripts", ec);
  if (ec) fail(ErrorCode::io_error, "cannot create " + out_dir + ": " + ec.message());
  {
    auto out = open_out(dir / "manifest.txt");
    write_manifest(out, manifest);
  }

  std::vector<ExperimentResult> results;
  bool all_pass = true;
  for (std::size_t i = 0; i < run.experiments.size(); ++i) {
    const auto& cfg = run.experiments[i];
    results.push_back(run_experiment(cfg, workers));
    const auto& res = results.back();
    {
      auto out = open_out(dir / (stem(cfg) + "_trials.csv"));
      write_trials_csv(out, res);
    }
    if (cfg.experiment != ExperimentKind::coupon) {
      for (std::uint64_t t = 0; t < std::min(run.transcripts, cfg.trials); ++t) {
        auto out = open_out(dir / "transcripts" /
                            (stem(cfg) + "_trial" + std::to_string(t) + ".txt"));
        write_transcript(out, experiment_transcript(cfg, run.derived[i], t));
      }
    }
    all_pass = all_pass && res.pass;
    std::cout << to_string(cfg.experiment) << " n=" << cfg.n << " m=" << res.params.m
              << " r=" << res.params.r << " mean=" << format_double(res.estimate.mean)
              << " se=" << format_double(res.estimate.se)
              << " event_fraction=" << format_double(res.event_fraction)
              << " threshold=" << format_double(res.threshold) << ' '
              << (res.pass ? "pass" : "fail") << '\n';
  }
  {
    auto out = open_out(dir / "summary.csv");
    out << kSummaryColumns << '\n';
    for (const auto& r : results) write_summary_row(out, r);
  }
  if (svg) {
    auto out = open_out(dir / (exp_name + "_error_vs_n.svg"));
    write_svg(out, results);
  }
  return all_pass ? 0 : 1;
}

int audit_command(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot read " + path);
  const auto violations = audit_transcript(read_transcript(in));
  for (const auto& v : violations) {
    std::cout << "violation code=" << v.code << " message=" << quote(v.message) << '\n';
  }
  std::cout << "audit " << (violations.empty() ? "clean" : "failed")
            << " violations=" << violations.size() << '\n';
  return violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo experiments on monotone adversarial corruptions"};
  app.require_subcommand(1);
  std::string config_path, transcript_path, out_dir;
  int workers = 1;
  bool svg = false;

  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "key=value config file")->required();
  run->add_option("--out", out_dir, "output directory (default: $MONOADV_OUT_DIR or ./out)");
  run->add_option("--workers", workers, "OpenMP worker threads")
      ->check(CLI::PositiveNumber);
  run->add_flag("--svg", svg, "also write an error-vs-n chart");

  auto* audit = app.add_subcommand("audit", "re-check a serialized transcript");
  audit->add_option("transcript", transcript_path, "transcript file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(ErrorCode::parse_error, e.what());
  }

  try {
    if (*run) return run_command(config_path, out_dir, workers, svg);
    return audit_command(transcript_path);
  } catch (const Error& e) {
    return report_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return report_error(ErrorCode::io_error, e.what());
  }
}
