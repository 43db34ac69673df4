// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/domain.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_set>

#include "monoadv/consistent_set.hpp"
#include "monoadv/error.hpp"
#include "monoadv/subsets.hpp"

namespace monoadv {

namespace {

// Upper bound on member-by-point evaluations for the brute-force helpers.
constexpr std::uint64_t kEvaluationBudget = 50'000'000;
// Upper bound on the members a positive_members() scan may touch.
constexpr std::uint64_t kScanBudget = 4'000'000;

std::uint64_t parse_count(std::string_view text, std::string_view key) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorCode::parse_error,
         "class parameter " + std::string(key) + " is not a count: " +
             std::string(text));
  }
  return value;
}

}  // namespace

std::string Point::name() const {
  const char prefix = kind == PointKind::x ? 'x' : kind == PointKind::y ? 'y' : 'z';
  return prefix + std::to_string(index + 1);
}

std::string_view to_string(ClassKind kind) {
  switch (kind) {
    case ClassKind::table: return "table";
    case ClassKind::majority_lb: return "majority_lb";
    case ClassKind::majority_lb_rand: return "majority_lb_rand";
    case ClassKind::oig_lb: return "oig_lb";
  }
  return "table";
}

std::string ClassSpec::to_string() const {
  std::ostringstream out;
  out << monoadv::to_string(kind);
  switch (kind) {
    case ClassKind::table: out << " size=" << table_size; break;
    case ClassKind::majority_lb: out << " r=" << r << " d=" << d; break;
    case ClassKind::majority_lb_rand:
      out << " r=" << r << " d=" << d << " K=" << copies;
      break;
    case ClassKind::oig_lb: out << " r=" << r; break;
  }
  return out.str();
}

ClassSpec ClassSpec::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  if (!(in >> token)) fail(ErrorCode::parse_error, "empty class spec");
  ClassSpec spec;
  if (token == "majority_lb") {
    spec.kind = ClassKind::majority_lb;
  } else if (token == "majority_lb_rand") {
    spec.kind = ClassKind::majority_lb_rand;
  } else if (token == "oig_lb") {
    spec.kind = ClassKind::oig_lb;
  } else if (token == "table") {
    spec.kind = ClassKind::table;
  } else {
    fail(ErrorCode::unknown_id, "unknown class kind: " + token);
  }
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::parse_error, "class parameter without '=': " + token);
    }
    const std::string key = token.substr(0, eq);
    const std::string_view value = std::string_view(token).substr(eq + 1);
    if (key == "r") {
      spec.r = parse_count(value, key);
    } else if (key == "d") {
      spec.d = parse_count(value, key);
    } else if (key == "K") {
      spec.copies = parse_count(value, key);
    } else if (key == "size") {
      spec.table_size = parse_count(value, key);
    } else {
      fail(ErrorCode::parse_error, "unknown class parameter: " + key);
    }
  }
  return spec;
}

// ---------------------------------------------------------------- Domain

Domain Domain::plain(std::uint64_t size) {
  Domain d;
  d.x_count_ = size;
  return d;
}

Domain Domain::subsets(std::uint64_t r, std::uint64_t d, std::uint64_t copies) {
  Domain dom;
  dom.x_count_ = r;
  dom.y_count_ = binomial(r, d);
  dom.z_count_ = copies;
  dom.d_ = d;
  return dom;
}

Domain Domain::paired(std::uint64_t r) {
  Domain d;
  d.x_count_ = r;
  d.y_count_ = r;
  return d;
}

Point Domain::point(PointId id) const {
  if (id < x_count_) return {id, PointKind::x, id};
  if (id < x_count_ + y_count_) return {id, PointKind::y, id - x_count_};
  if (id < size()) return {id, PointKind::z, id - x_count_ - y_count_};
  fail(ErrorCode::domain_mismatch,
       "point id " + std::to_string(id) + " outside domain of size " +
           std::to_string(size()));
}

PointId Domain::x(std::uint64_t i) const {
  if (i >= x_count_) fail(ErrorCode::domain_mismatch, "x index out of range");
  return i;
}

PointId Domain::y(std::uint64_t i) const {
  if (i >= y_count_) fail(ErrorCode::domain_mismatch, "y index out of range");
  return x_count_ + i;
}

PointId Domain::z(std::uint64_t j) const {
  if (j >= z_count_) fail(ErrorCode::domain_mismatch, "z index out of range");
  return x_count_ + y_count_ + j;
}

std::vector<PointId> Domain::x_points() const {
  std::vector<PointId> out(x_count_);
  for (std::uint64_t i = 0; i < x_count_; ++i) out[i] = i;
  return out;
}

// ------------------------------------------------------------ Hypothesis

Hypothesis Hypothesis::subset_indicator(std::vector<std::uint32_t> subset,
                                        std::uint64_t r) {
  std::sort(subset.begin(), subset.end());
  const auto rank = rank_subset(subset, r);
  return Hypothesis(SubsetIndicator{std::move(subset), rank});
}

Hypothesis Hypothesis::subset_indicator_copy(std::vector<std::uint32_t> subset,
                                             std::uint64_t r,
                                             std::uint64_t copy) {
  std::sort(subset.begin(), subset.end());
  const auto rank = rank_subset(subset, r);
  return Hypothesis(SubsetIndicatorCopy{std::move(subset), rank, copy});
}

Hypothesis Hypothesis::pair_singleton(std::uint64_t index) {
  return Hypothesis(PairSingleton{index});
}

Hypothesis Hypothesis::from_bits(BitPattern bits) {
  return Hypothesis(Explicit{std::move(bits)});
}

Label Hypothesis::label(const Point& x) const {
  struct Visitor {
    const Point& x;
    Label operator()(const AllZero&) const { return 0; }
    Label operator()(const SubsetIndicator& h) const {
      return x.kind == PointKind::x &&
             std::binary_search(h.subset.begin(), h.subset.end(), x.index);
    }
    Label operator()(const SubsetIndicatorCopy& h) const {
      switch (x.kind) {
        case PointKind::x:
          return std::binary_search(h.subset.begin(), h.subset.end(), x.index);
        case PointKind::y: return x.index != h.rank;
        case PointKind::z: return x.index == h.copy;
      }
      return 0;
    }
    Label operator()(const PairSingleton& h) const {
      return x.kind != PointKind::z && x.index == h.index;
    }
    Label operator()(const Explicit& h) const {
      if (x.id >= h.bits.size()) {
        fail(ErrorCode::domain_mismatch, "point outside table hypothesis");
      }
      return h.bits.test(x.id);
    }
  };
  return std::visit(Visitor{x}, descriptor_);
}

std::string Hypothesis::describe() const {
  struct Visitor {
    std::string operator()(const AllZero&) const { return "h*"; }
    std::string operator()(const SubsetIndicator& h) const {
      std::string s = "h_T{";
      for (std::size_t i = 0; i < h.subset.size(); ++i) {
        s += (i ? "," : "") + std::to_string(h.subset[i] + 1);
      }
      return s + "}";
    }
    std::string operator()(const SubsetIndicatorCopy& h) const {
      std::string s = "h_T{";
      for (std::size_t i = 0; i < h.subset.size(); ++i) {
        s += (i ? "," : "") + std::to_string(h.subset[i] + 1);
      }
      return s + "},j=" + std::to_string(h.copy + 1);
    }
    std::string operator()(const PairSingleton& h) const {
      return "h_" + std::to_string(h.index + 1);
    }
    std::string operator()(const Explicit& h) const {
      return "table:" + h.bits.to_string();
    }
  };
  return std::visit(Visitor{}, descriptor_);
}

// -------------------------------------------------------------- PointSet

PointSet::PointSet(std::span<const PointId> points)
    : ids_(points.begin(), points.end()) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool PointSet::contains(PointId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::span<const PointId> PointSet::range(PointId lo, PointId hi) const {
  auto first = std::lower_bound(ids_.begin(), ids_.end(), lo);
  auto last = std::lower_bound(first, ids_.end(), hi);
  return {first, last};
}

// ------------------------------------------------------- HypothesisClass

HypothesisClass HypothesisClass::from_table(std::vector<BitPattern> table,
                                            std::size_t target_index) {
  if (table.empty() || target_index >= table.size()) {
    fail(ErrorCode::invalid_parameters, "table class needs a target member");
  }
  const std::size_t width = table.front().size();
  std::unordered_set<BitPattern, BitPatternHash> seen;
  for (const auto& row : table) {
    if (row.size() != width) {
      fail(ErrorCode::invalid_parameters, "table rows differ in length");
    }
    if (!seen.insert(row).second) {
      fail(ErrorCode::invalid_parameters, "table rows are not distinct");
    }
  }
  std::rotate(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(target_index),
              table.begin() + static_cast<std::ptrdiff_t>(target_index) + 1);
  HypothesisClass cls;
  cls.spec_.kind = ClassKind::table;
  cls.spec_.table_size = width;
  cls.domain_ = Domain::plain(width);
  cls.size_ = table.size();
  cls.table_ = std::make_shared<const std::vector<BitPattern>>(std::move(table));
  return cls;
}

HypothesisClass HypothesisClass::majority_lb(std::uint64_t r, std::uint64_t d) {
  if (d < 1 || r < d) {
    fail(ErrorCode::invalid_parameters, "majority_lb needs r >= d >= 1");
  }
  HypothesisClass cls;
  cls.spec_ = {ClassKind::majority_lb, r, d, 0, 0};
  cls.domain_ = Domain::subsets(r, d, 0);
  cls.size_ = cls.domain_.y_count() + 1;
  return cls;
}

HypothesisClass HypothesisClass::majority_lb_rand(std::uint64_t r,
                                                  std::uint64_t d,
                                                  std::uint64_t copies) {
  if (d < 1 || r < d || copies < 1) {
    fail(ErrorCode::invalid_parameters,
         "majority_lb_rand needs r >= d >= 1 and K >= 1");
  }
  HypothesisClass cls;
  cls.spec_ = {ClassKind::majority_lb_rand, r, d, copies, 0};
  cls.domain_ = Domain::subsets(r, d, copies);
  const auto subsets = cls.domain_.y_count();
  if (subsets > (std::uint64_t{1} << 62) / copies) {
    fail(ErrorCode::capacity_exceeded, "majority_lb_rand class too large");
  }
  cls.size_ = subsets * copies + 1;
  return cls;
}

HypothesisClass HypothesisClass::oig_lb(std::uint64_t r) {
  if (r < 1) fail(ErrorCode::invalid_parameters, "oig_lb needs r >= 1");
  HypothesisClass cls;
  cls.spec_ = {ClassKind::oig_lb, r, 0, 0, 0};
  cls.domain_ = Domain::paired(r);
  cls.size_ = r + 1;
  return cls;
}

HypothesisClass HypothesisClass::from_spec(const ClassSpec& spec) {
  switch (spec.kind) {
    case ClassKind::majority_lb: return majority_lb(spec.r, spec.d);
    case ClassKind::majority_lb_rand:
      return majority_lb_rand(spec.r, spec.d, spec.copies);
    case ClassKind::oig_lb: return oig_lb(spec.r);
    case ClassKind::table: break;
  }
  fail(ErrorCode::invalid_parameters,
       "table classes cannot be rebuilt from their spec");
}

Hypothesis HypothesisClass::at(std::uint64_t index) const {
  if (index >= size_) {
    fail(ErrorCode::invalid_parameters, "hypothesis index out of range");
  }
  if (spec_.kind == ClassKind::table) return Hypothesis::from_bits((*table_)[index]);
  if (index == 0) return Hypothesis::all_zero();
  const std::uint64_t k = index - 1;
  switch (spec_.kind) {
    case ClassKind::majority_lb:
      return Hypothesis(Hypothesis::SubsetIndicator{
          unrank_subset(k, spec_.r, spec_.d), k});
    case ClassKind::majority_lb_rand: {
      const std::uint64_t rank = k / spec_.copies;
      return Hypothesis(Hypothesis::SubsetIndicatorCopy{
          unrank_subset(rank, spec_.r, spec_.d), rank, k % spec_.copies});
    }
    case ClassKind::oig_lb: return Hypothesis::pair_singleton(k);
    case ClassKind::table: break;
  }
  return Hypothesis::all_zero();
}

void HypothesisClass::check_member(const Hypothesis& h) const {
  const auto& desc = h.descriptor();
  bool ok = false;
  switch (spec_.kind) {
    case ClassKind::table: {
      const auto* e = std::get_if<Hypothesis::Explicit>(&desc);
      ok = h.is_all_zero() || (e && e->bits.size() == domain_.size());
      break;
    }
    case ClassKind::majority_lb: {
      const auto* s = std::get_if<Hypothesis::SubsetIndicator>(&desc);
      ok = h.is_all_zero() ||
           (s && s->subset.size() == spec_.d && s->rank < domain_.y_count());
      break;
    }
    case ClassKind::majority_lb_rand: {
      const auto* s = std::get_if<Hypothesis::SubsetIndicatorCopy>(&desc);
      ok = h.is_all_zero() ||
           (s && s->subset.size() == spec_.d && s->rank < domain_.y_count() &&
            s->copy < spec_.copies);
      break;
    }
    case ClassKind::oig_lb: {
      const auto* p = std::get_if<Hypothesis::PairSingleton>(&desc);
      ok = h.is_all_zero() || (p && p->index < spec_.r);
      break;
    }
  }
  if (!ok) {
    fail(ErrorCode::domain_mismatch,
         h.describe() + " does not fit class " + spec_.to_string());
  }
}

std::uint64_t HypothesisClass::index_of(const Hypothesis& h) const {
  check_member(h);
  if (spec_.kind == ClassKind::table) {
    BitPattern zero(domain_.size());
    const auto* e = std::get_if<Hypothesis::Explicit>(&h.descriptor());
    const BitPattern& bits = e ? e->bits : zero;
    for (std::uint64_t i = 0; i < size_; ++i) {
      if ((*table_)[i] == bits) return i;
    }
    fail(ErrorCode::domain_mismatch, "hypothesis is not a member of the table");
  }
  if (h.is_all_zero()) return 0;
  const auto& desc = h.descriptor();
  switch (spec_.kind) {
    case ClassKind::majority_lb:
      return 1 + std::get<Hypothesis::SubsetIndicator>(desc).rank;
    case ClassKind::majority_lb_rand: {
      const auto& s = std::get<Hypothesis::SubsetIndicatorCopy>(desc);
      return 1 + s.rank * spec_.copies + s.copy;
    }
    case ClassKind::oig_lb:
      return 1 + std::get<Hypothesis::PairSingleton>(desc).index;
    case ClassKind::table: break;
  }
  return 0;
}

Label HypothesisClass::evaluate(const Hypothesis& h, PointId x) const {
  const Point p = domain_.point(x);
  check_member(h);
  return h.label(p);
}

Label HypothesisClass::target_label(PointId x) const {
  const Point p = domain_.point(x);
  if (spec_.kind == ClassKind::table) return (*table_)[0].test(p.id);
  return 0;
}

std::vector<std::uint64_t> HypothesisClass::positive_members(PointId x) const {
  const Point p = domain_.point(x);
  std::vector<std::uint64_t> out;
  if (spec_.kind == ClassKind::oig_lb) {
    out.push_back(1 + p.index);
    return out;
  }
  if (spec_.kind == ClassKind::majority_lb && p.kind == PointKind::y) return out;
  if (spec_.kind == ClassKind::majority_lb && spec_.d == 1) {
    out.push_back(1 + p.index);
    return out;
  }
  if (size_ > kScanBudget) {
    fail(ErrorCode::capacity_exceeded,
         "positive member scan over a class of size " + std::to_string(size_));
  }
  for (std::uint64_t i = 0; i < size_; ++i) {
    if (at(i).label(p)) out.push_back(i);
  }
  return out;
}

void HypothesisClass::positive_points(const Hypothesis& h,
                                      const PointSet& present,
                                      std::vector<PointId>& out) const {
  struct Visitor {
    const Domain& dom;
    const PointSet& present;
    std::vector<PointId>& out;
    void add_if_present(PointId id) const {
      if (present.contains(id)) out.push_back(id);
    }
    void operator()(const Hypothesis::AllZero&) const {}
    void operator()(const Hypothesis::SubsetIndicator& h) const {
      for (auto i : h.subset) add_if_present(dom.x(i));
    }
    void operator()(const Hypothesis::SubsetIndicatorCopy& h) const {
      for (auto i : h.subset) add_if_present(dom.x(i));
      const PointId own = dom.y(h.rank);
      for (auto id : present.range(dom.y_begin(), dom.y_end())) {
        if (id != own) out.push_back(id);
      }
      add_if_present(dom.z(h.copy));
    }
    void operator()(const Hypothesis::PairSingleton& h) const {
      add_if_present(dom.x(h.index));
      add_if_present(dom.y(h.index));
    }
    void operator()(const Hypothesis::Explicit& h) const {
      for (auto id : present.ids()) {
        if (h.bits.test(id)) out.push_back(id);
      }
    }
  };
  std::visit(Visitor{domain_, present, out}, h.descriptor());
}

double HypothesisClass::uniform_x_error_ceiling() const {
  switch (spec_.kind) {
    case ClassKind::majority_lb:
    case ClassKind::majority_lb_rand:
      return static_cast<double>(spec_.d) / static_cast<double>(spec_.r);
    case ClassKind::oig_lb: return 1.0 / static_cast<double>(spec_.r);
    case ClassKind::table: break;
  }
  const auto& target = (*table_)[0];
  std::size_t worst = 0;
  for (const auto& row : *table_) {
    std::size_t diff = 0;
    for (std::size_t i = 0; i < row.size(); ++i) diff += row.test(i) != target.test(i);
    worst = std::max(worst, diff);
  }
  return static_cast<double>(worst) / static_cast<double>(domain_.size());
}

// ---------------------------------------------------- brute-force helpers

std::vector<BitPattern> project(const HypothesisClass& cls,
                                std::span<const PointId> points) {
  std::vector<Point> resolved;
  resolved.reserve(points.size());
  for (auto id : points) resolved.push_back(cls.domain().point(id));
  if (cls.size() > kEvaluationBudget / std::max<std::size_t>(1, points.size())) {
    fail(ErrorCode::capacity_exceeded, "projection too large to enumerate");
  }
  std::set<BitPattern> patterns;
  for (std::uint64_t i = 0; i < cls.size(); ++i) {
    const Hypothesis h = cls.at(i);
    BitPattern row(points.size());
    for (std::size_t k = 0; k < resolved.size(); ++k) {
      if (h.label(resolved[k])) row.set(k);
    }
    patterns.insert(std::move(row));
  }
  return {patterns.begin(), patterns.end()};
}

VcDimension vc_dimension(const HypothesisClass& cls, std::uint64_t cap) {
  const std::uint64_t n = cls.domain().size();
  if (cap > 20) fail(ErrorCode::capacity_exceeded, "vc_dimension cap above 20");
  if (cls.size() > kEvaluationBudget / std::max<std::uint64_t>(1, n)) {
    fail(ErrorCode::capacity_exceeded, "class too large for shattering search");
  }
  std::vector<BitPattern> rows;
  rows.reserve(cls.size());
  for (std::uint64_t i = 0; i < cls.size(); ++i) {
    const Hypothesis h = cls.at(i);
    BitPattern row(n);
    for (PointId id = 0; id < n; ++id) {
      if (h.label(cls.domain().point(id))) row.set(id);
    }
    rows.push_back(std::move(row));
  }

  auto shattered_subset_exists = [&](std::uint64_t s) {
    std::vector<std::uint64_t> pick(s);
    for (std::uint64_t i = 0; i < s; ++i) pick[i] = i;
    std::vector<char> seen(std::size_t{1} << s);
    const std::size_t full = std::size_t{1} << s;
    while (true) {
      std::fill(seen.begin(), seen.end(), 0);
      std::size_t distinct = 0;
      for (const auto& row : rows) {
        std::size_t mask = 0;
        for (std::uint64_t k = 0; k < s; ++k) {
          if (row.test(pick[k])) mask |= std::size_t{1} << k;
        }
        if (!seen[mask]) {
          seen[mask] = 1;
          if (++distinct == full) return true;
        }
      }
      // Next combination in lexicographic order.
      std::int64_t pos = static_cast<std::int64_t>(s) - 1;
      while (pos >= 0 && pick[pos] == n - s + static_cast<std::uint64_t>(pos)) --pos;
      if (pos < 0) return false;
      ++pick[pos];
      for (auto k = static_cast<std::uint64_t>(pos) + 1; k < s; ++k) {
        pick[k] = pick[k - 1] + 1;
      }
    }
  };

  VcDimension result;
  for (std::uint64_t s = 1; s <= std::min(cap, n); ++s) {
    if ((std::uint64_t{1} << s) > cls.size()) break;
    if (!shattered_subset_exists(s)) break;
    result.value = s;
  }
  result.at_cap = cap > 0 && result.value == cap;
  return result;
}

}  // namespace monoadv
