// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include <istream>
#include <ostream>
#include <sstream>

#include "monoadv/error.hpp"
#include "monoadv/pipeline.hpp"

namespace monoadv {

namespace {

constexpr std::string_view kMagic = "monoadv-transcript 1";

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  fail(ErrorCode::malformed_transcript,
       "line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_transcript(std::ostream& out, const AdversaryTranscript& t) {
  std::vector<std::uint64_t> position(t.n + t.m);
  for (std::uint64_t p = 0; p < t.permutation.size(); ++p) {
    position[t.permutation[p]] = p;
  }
  out << kMagic << '\n'
      << "n " << t.n << '\n'
      << "m " << t.m << '\n'
      << "seed " << t.master_seed << '\n'
      << "adversary " << t.adversary_id << '\n'
      << "class " << t.class_spec.to_string() << '\n'
      << "order " << (t.adversary_first ? "adversary_first" : "clean_first")
      << '\n';
  for (std::uint64_t i = 0; i < t.n; ++i) {
    out << "clean " << t.clean[i].point << ' ' << int(t.clean[i].label) << ' '
        << position[i] << '\n';
  }
  for (std::uint64_t i = 0; i < t.m; ++i) {
    out << "corrupted " << t.corrupted[i].point << ' '
        << int(t.corrupted[i].label) << ' ' << position[t.n + i] << '\n';
  }
}

TranscriptFile read_transcript(std::istream& in) {
  TranscriptFile file;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kMagic) {
    malformed(1, "missing transcript header");
  }
  ++line_no;
  bool have_n = false, have_m = false, have_seed = false, have_adv = false,
       have_class = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key == "clean" || key == "corrupted") {
      TranscriptEntry e;
      e.role = key;
      e.line = line_no;
      int label = -1;
      if (!(fields >> e.point >> label >> e.position) || (label != 0 && label != 1)) {
        malformed(line_no, "expected 'role point_id label position'");
      }
      std::string extra;
      if (fields >> extra) malformed(line_no, "trailing fields");
      e.label = static_cast<Label>(label);
      file.entries.push_back(e);
    } else if (key == "n") {
      have_n = static_cast<bool>(fields >> file.n);
    } else if (key == "m") {
      have_m = static_cast<bool>(fields >> file.m);
    } else if (key == "seed") {
      have_seed = static_cast<bool>(fields >> file.seed);
    } else if (key == "adversary") {
      have_adv = static_cast<bool>(fields >> file.adversary_id);
    } else if (key == "class") {
      std::getline(fields >> std::ws, file.class_spec);
      have_class = !file.class_spec.empty();
    } else if (key == "order") {
      // informational
    } else {
      malformed(line_no, "unknown record '" + key + "'");
    }
  }
  if (!(have_n && have_m && have_seed && have_adv && have_class)) {
    malformed(line_no, "header is missing one of n, m, seed, adversary, class");
  }
  return file;
}

std::vector<AuditViolation> audit_transcript(const TranscriptFile& file) {
  HypothesisClass cls = [&] {
    try {
      return HypothesisClass::from_spec(ClassSpec::parse(file.class_spec));
    } catch (const Error& e) {
      fail(ErrorCode::malformed_transcript, std::string("class: ") + e.what());
    }
  }();

  std::vector<AuditViolation> out;
  std::uint64_t clean = 0, corrupted = 0;
  const std::uint64_t total = file.entries.size();
  std::vector<char> used(total, 0);
  for (const auto& e : file.entries) {
    const std::string where = "line " + std::to_string(e.line);
    (e.role == "clean" ? clean : corrupted)++;
    if (!cls.domain().contains(e.point)) {
      out.push_back({"domain", where + ": point " + std::to_string(e.point) +
                                   " outside the domain"});
    } else if (e.label != cls.target_label(e.point)) {
      out.push_back({"monotonicity",
                     where + ": label " + std::to_string(int(e.label)) + " on " +
                         cls.domain().point(e.point).name() + " differs from h*"});
    }
    if (e.position >= total) {
      out.push_back({"permutation", where + ": position out of range"});
    } else if (used[e.position]) {
      out.push_back({"permutation", where + ": position used twice"});
    } else {
      used[e.position] = 1;
    }
  }
  if (clean != file.n) {
    out.push_back({"arity", "header n=" + std::to_string(file.n) + " but " +
                                std::to_string(clean) + " clean examples"});
  }
  if (corrupted != file.m) {
    out.push_back({"arity", "header m=" + std::to_string(file.m) + " but " +
                                std::to_string(corrupted) + " corrupted examples"});
  }
  return out;
}

}  // namespace monoadv
