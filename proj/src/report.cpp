// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "monoadv/config.hpp"

namespace monoadv {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

namespace {

template <typename T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

}  // namespace

void write_trials_csv(std::ostream& out, const ExperimentResult& result) {
  out << kTrialColumns << '\n';
  const auto& cfg = result.config;
  for (const auto& row : result.rows) {
    out << row.trial << ',' << row.trial_seed << ',' << cfg.n << ','
        << result.params.m << ',' << result.params.r << ',' << row.missing << ','
        << (row.event ? 1 : 0) << ',' << opt(row.error) << ','
        << opt(row.erm_first_error) << ',' << opt(row.erm_worst_error) << ','
        << opt(row.loo_mistakes) << ',' << opt(row.target_outdegree) << '\n';
  }
}

void write_summary_row(std::ostream& out, const ExperimentResult& r) {
  const auto& e = r.estimate;
  out << to_string(r.config.experiment) << ',' << r.config.n << ',' << r.params.m
      << ',' << r.params.r << ',' << r.config.d << ',' << r.params.k << ','
      << e.trials << ',' << r.config.seed << ',' << format_double(e.mean) << ','
      << format_double(e.se) << ',' << format_double(e.ci_low) << ','
      << format_double(e.ci_high) << ',' << format_double(e.max) << ','
      << format_double(r.event_fraction) << ',' << format_double(r.ratio) << ','
      << format_double(r.baseline_mean) << ',' << format_double(r.worst_erm_max)
      << ',' << format_double(r.reference) << ',' << format_double(r.threshold)
      << ',' << r.relation << ',' << r.monotone_violations << ','
      << r.audit_failures << ',' << (r.pass ? "pass" : "fail") << '\n';
}

void write_svg(std::ostream& out, std::span<const ExperimentResult> results) {
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double xmin = 0, xmax = 1, ymax = 0;
  if (!results.empty()) {
    xmin = xmax = static_cast<double>(results.front().config.n);
  }
  for (const auto& r : results) {
    xmin = std::min(xmin, static_cast<double>(r.config.n));
    xmax = std::max(xmax, static_cast<double>(r.config.n));
    ymax = std::max(ymax, r.estimate.ci_high);
  }
  if (xmax == xmin) {
    xmin -= 1;
    xmax += 1;
  }
  if (ymax <= 0) ymax = 1;
  ymax *= 1.1;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - y / ymax * (H - T - B); };
  auto f = [](double v) { return format_double(std::round(v * 100.0) / 100.0); };

  const std::string title =
      results.empty() ? "" : std::string(to_string(results.front().config.experiment));
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
      << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title
      << ": mean error vs n (99% CI)</text>\n"
      << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\""
      << H - B << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = ymax * i / 4.0;
    out << "<text x=\"" << L - 6 << "\" y=\"" << f(py(y) + 4)
        << "\" text-anchor=\"end\">" << format_double(std::round(y * 1e4) / 1e4)
        << "</text>\n";
  }
  std::string points;
  for (const auto& r : results) {
    const double x = px(static_cast<double>(r.config.n));
    points += f(x) + "," + f(py(r.estimate.mean)) + " ";
    out << "<line x1=\"" << f(x) << "\" y1=\"" << f(py(r.estimate.ci_low)) << "\" x2=\""
        << f(x) << "\" y2=\"" << f(py(r.estimate.ci_high))
        << "\" stroke=\"gray\"/>\n"
        << "<circle cx=\"" << f(x) << "\" cy=\"" << f(py(r.estimate.mean))
        << "\" r=\"3\" fill=\"steelblue\"/>\n"
        << "<text x=\"" << f(x) << "\" y=\"" << H - B + 18
        << "\" text-anchor=\"middle\">" << r.config.n << "</text>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"" << points << "\"/>\n"
      << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\">n</text>\n"
      << "</svg>\n";
}

void write_manifest(std::ostream& out, const RunManifest& m) {
  out << "monoadv " << kVersion << '\n'
      << "config_path=" << m.config_path << '\n'
      << "master_seed=" << m.master_seed << '\n'
      << "out_dir=" << m.out_dir << '\n'
      << "[resolved]\n"
      << m.resolved_config << "[files]\n";
  for (const auto& f : m.files) out << f << '\n';
}

}  // namespace monoadv
