// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/config.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "monoadv/error.hpp"
#include "monoadv/report.hpp"

namespace monoadv {

namespace {

constexpr std::string_view kKeys[] = {
    "experiment", "n",     "m",   "d",         "k",           "c",
    "delta",      "K",     "trials", "seed",   "voter",       "erm",
    "erm_mode",   "adversary", "r", "floor",   "ratio_floor", "transcripts"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t to_count(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorCode::parse_error,
         std::string(key) + " expects a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

double to_real(std::string_view key, std::string_view text) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorCode::parse_error,
         std::string(key) + " expects a number, got '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    bool known = false;
    for (auto k : kKeys) known = known || k == key;
    if (!known) {
      fail(ErrorCode::unknown_id, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!kv.emplace(key, value).second) {
      fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  for (auto required : {"experiment", "n", "trials", "seed"}) {
    if (!kv.count(required)) {
      fail(ErrorCode::parse_error, std::string("missing required key '") + required + "'");
    }
  }

  ExperimentConfig base;
  base.experiment = parse_experiment(kv["experiment"]);
  base.trials = to_count("trials", kv["trials"]);
  base.seed = to_count("seed", kv["seed"]);
  if (auto it = kv.find("m"); it != kv.end()) base.m = to_count("m", it->second);
  if (auto it = kv.find("d"); it != kv.end()) base.d = to_count("d", it->second);
  if (auto it = kv.find("k"); it != kv.end()) base.k = to_count("k", it->second);
  if (auto it = kv.find("c"); it != kv.end()) base.c = to_real("c", it->second);
  if (auto it = kv.find("delta"); it != kv.end()) base.delta = to_real("delta", it->second);
  if (auto it = kv.find("K"); it != kv.end()) base.copies = to_count("K", it->second);
  if (auto it = kv.find("voter"); it != kv.end()) base.voter = parse_voter(it->second);
  if (auto it = kv.find("erm"); it != kv.end()) base.erm = parse_erm(it->second);
  if (auto it = kv.find("erm_mode"); it != kv.end()) base.erm_mode = parse_erm_mode(it->second);
  if (auto it = kv.find("adversary"); it != kv.end()) base.adversary = it->second;
  if (auto it = kv.find("r"); it != kv.end()) base.r = to_count("r", it->second);
  if (auto it = kv.find("floor"); it != kv.end()) base.floor = to_real("floor", it->second);
  if (auto it = kv.find("ratio_floor"); it != kv.end()) {
    base.ratio_floor = to_real("ratio_floor", it->second);
  }

  RunConfig run;
  if (auto it = kv.find("transcripts"); it != kv.end()) {
    run.transcripts = to_count("transcripts", it->second);
  }
  std::string_view list = kv["n"];
  while (true) {
    const auto comma = list.find(',');
    ExperimentConfig cfg = base;
    cfg.n = to_count("n", trim(list.substr(0, comma)));
    run.derived.push_back(derive(cfg));
    run.experiments.push_back(cfg);
    if (comma == std::string_view::npos) break;
    list = list.substr(comma + 1);
  }
  return run;
}

std::string resolved_config(const RunConfig& run) {
  const auto& cfg = run.experiments.front();
  std::ostringstream out;
  out << "experiment=" << to_string(cfg.experiment) << '\n' << "n=";
  for (std::size_t i = 0; i < run.experiments.size(); ++i) {
    out << (i ? "," : "") << run.experiments[i].n;
  }
  out << '\n' << "m=";
  for (std::size_t i = 0; i < run.derived.size(); ++i) {
    out << (i ? "," : "") << run.derived[i].m;
  }
  out << '\n' << "r=";
  for (std::size_t i = 0; i < run.derived.size(); ++i) {
    out << (i ? "," : "") << run.derived[i].r;
  }
  out << '\n' << "k=";
  for (std::size_t i = 0; i < run.derived.size(); ++i) {
    out << (i ? "," : "") << run.derived[i].k;
  }
  out << '\n'
      << "d=" << cfg.d << '\n'
      << "c=" << format_double(cfg.c) << '\n'
      << "delta=" << format_double(cfg.delta) << '\n'
      << "K=" << cfg.copies << '\n'
      << "trials=" << cfg.trials << '\n'
      << "seed=" << cfg.seed << '\n'
      << "voter=" << to_string(cfg.voter) << '\n'
      << "erm=" << to_string(cfg.erm) << '\n'
      << "erm_mode=" << to_string(cfg.erm_mode) << '\n'
      << "adversary=" << cfg.adversary << '\n'
      << "floor=" << (cfg.floor ? format_double(*cfg.floor) : "default") << '\n'
      << "ratio_floor=" << (cfg.ratio_floor ? format_double(*cfg.ratio_floor) : "none")
      << '\n'
      << "transcripts=" << run.transcripts << '\n';
  for (std::size_t i = 0; i < run.derived.size(); ++i) {
    out << "class[" << run.experiments[i].n << "]="
        << (cfg.experiment == ExperimentKind::coupon ? "none"
                                                     : run.derived[i].class_spec.to_string())
        << '\n';
  }
  return out.str();
}

}  // namespace monoadv
