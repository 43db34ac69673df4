// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "monoadv/bit_pattern.hpp"

namespace monoadv {

using PointId = std::uint64_t;
using Label = std::uint8_t;

/// Which family of a construction a point belongs to. Plain domains (explicit
/// tables) only contain x-points.
enum class PointKind : std::uint8_t { x, y, z };

struct Point {
  PointId id = 0;
  PointKind kind = PointKind::x;
  std::uint64_t index = 0;  ///< 0-based position within its family

  /// "x3", "y12", "z1" with 1-based indices.
  std::string name() const;
  friend bool operator==(const Point&, const Point&) = default;
};

struct LabeledExample {
  PointId point = 0;
  Label label = 0;
  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

using Dataset = std::vector<LabeledExample>;

enum class ClassKind { table, majority_lb, majority_lb_rand, oig_lb };

std::string_view to_string(ClassKind kind);

/// Name + parameters of a class construction, e.g. "majority_lb r=5 d=2".
struct ClassSpec {
  ClassKind kind = ClassKind::table;
  std::uint64_t r = 0;
  std::uint64_t d = 0;
  std::uint64_t copies = 0;       ///< K, majority_lb_rand only
  std::uint64_t table_size = 0;   ///< domain size, table classes only

  std::string to_string() const;
  static ClassSpec parse(std::string_view text);
  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

/// Finite point domain laid out as contiguous families: x-points first, then
/// y-points, then z-points. For subset domains the y-point index is the
/// lexicographic rank of its d-subset.
class Domain {
 public:
  static Domain plain(std::uint64_t size);
  static Domain subsets(std::uint64_t r, std::uint64_t d, std::uint64_t copies);
  static Domain paired(std::uint64_t r);

  std::uint64_t size() const noexcept { return x_count_ + y_count_ + z_count_; }
  std::uint64_t x_count() const noexcept { return x_count_; }
  std::uint64_t y_count() const noexcept { return y_count_; }
  std::uint64_t z_count() const noexcept { return z_count_; }
  std::uint64_t subset_size() const noexcept { return d_; }

  bool contains(PointId id) const noexcept { return id < size(); }
  Point point(PointId id) const;

  PointId x(std::uint64_t i) const;
  PointId y(std::uint64_t i) const;
  PointId z(std::uint64_t j) const;
  PointId y_begin() const noexcept { return x_count_; }
  PointId y_end() const noexcept { return x_count_ + y_count_; }

  std::vector<PointId> x_points() const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::uint64_t x_count_ = 0;
  std::uint64_t y_count_ = 0;
  std::uint64_t z_count_ = 0;
  std::uint64_t d_ = 0;
};

/// A total binary labeling, either named structurally or given as a table.
class Hypothesis {
 public:
  struct AllZero {
    friend bool operator==(const AllZero&, const AllZero&) = default;
  };
  /// 1 exactly on x_i, i in subset.
  struct SubsetIndicator {
    std::vector<std::uint32_t> subset;
    std::uint64_t rank = 0;
    friend bool operator==(const SubsetIndicator&,
                           const SubsetIndicator&) = default;
  };
  /// 1 on x_i for i in subset, on every y except the subset's own, and on
  /// z_copy; 0 elsewhere.
  struct SubsetIndicatorCopy {
    std::vector<std::uint32_t> subset;
    std::uint64_t rank = 0;
    std::uint64_t copy = 0;
    friend bool operator==(const SubsetIndicatorCopy&,
                           const SubsetIndicatorCopy&) = default;
  };
  /// 1 exactly on x_index and y_index.
  struct PairSingleton {
    std::uint64_t index = 0;
    friend bool operator==(const PairSingleton&, const PairSingleton&) = default;
  };
  struct Explicit {
    BitPattern bits;
    friend bool operator==(const Explicit&, const Explicit&) = default;
  };
  using Descriptor = std::variant<AllZero, SubsetIndicator, SubsetIndicatorCopy,
                                  PairSingleton, Explicit>;

  Hypothesis() = default;
  explicit Hypothesis(Descriptor descriptor)
      : descriptor_(std::move(descriptor)) {}

  static Hypothesis all_zero() { return Hypothesis{}; }
  static Hypothesis subset_indicator(std::vector<std::uint32_t> subset,
                                     std::uint64_t r);
  static Hypothesis subset_indicator_copy(std::vector<std::uint32_t> subset,
                                          std::uint64_t r, std::uint64_t copy);
  static Hypothesis pair_singleton(std::uint64_t index);
  static Hypothesis from_bits(BitPattern bits);

  const Descriptor& descriptor() const noexcept { return descriptor_; }
  bool is_all_zero() const noexcept {
    return std::holds_alternative<AllZero>(descriptor_);
  }

  /// Label of `x`. Total over any domain whose layout matches the
  /// descriptor; table hypotheses require x.id inside the table.
  Label label(const Point& x) const;

  std::string describe() const;

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;

 private:
  Descriptor descriptor_;
};

/// Sorted set of distinct ids taken from a point list.
class PointSet {
 public:
  explicit PointSet(std::span<const PointId> points);
  bool contains(PointId id) const;
  std::span<const PointId> ids() const noexcept { return ids_; }
  /// Present ids in [lo, hi).
  std::span<const PointId> range(PointId lo, PointId hi) const;

 private:
  std::vector<PointId> ids_;
};

class ConsistentSet;

/// Finite hypothesis class with the constant-0 target h* at canonical index 0.
/// Structured constructions enumerate their members in lexicographic
/// parameter order after h*; table classes keep table order after h*.
/// Objects are immutable and cheap to copy.
class HypothesisClass {
 public:
  /// `table[target_index]` becomes h*. Every pattern must have the same
  /// length, and patterns must be distinct.
  static HypothesisClass from_table(std::vector<BitPattern> table,
                                    std::size_t target_index = 0);
  static HypothesisClass majority_lb(std::uint64_t r, std::uint64_t d);
  static HypothesisClass majority_lb_rand(std::uint64_t r, std::uint64_t d,
                                          std::uint64_t copies);
  static HypothesisClass oig_lb(std::uint64_t r);
  static HypothesisClass from_spec(const ClassSpec& spec);

  const ClassSpec& spec() const noexcept { return spec_; }
  ClassKind kind() const noexcept { return spec_.kind; }
  const Domain& domain() const noexcept { return domain_; }

  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t target_index() const noexcept { return 0; }
  Hypothesis target() const { return at(0); }
  Hypothesis at(std::uint64_t index) const;
  std::uint64_t index_of(const Hypothesis& h) const;

  /// Label of `h` at `x` after checking that both belong to this class's
  /// domain.
  Label evaluate(const Hypothesis& h, PointId x) const;
  Label target_label(PointId x) const;

  ConsistentSet consistent(std::span<const LabeledExample> data) const;

  /// Class indices of members labeling x with 1, ascending.
  std::vector<std::uint64_t> positive_members(PointId x) const;

  /// Appends the ids in `present` that `h` labels 1 (unordered).
  void positive_points(const Hypothesis& h, const PointSet& present,
                       std::vector<PointId>& out) const;

  /// The members' error ceiling under a distribution uniform over the
  /// x-points: every non-target member of the structured constructions has
  /// exactly this error. Table classes return the maximum over members.
  double uniform_x_error_ceiling() const;

 private:
  HypothesisClass() = default;
  void check_member(const Hypothesis& h) const;

  ClassSpec spec_;
  Domain domain_;
  std::uint64_t size_ = 0;
  std::shared_ptr<const std::vector<BitPattern>> table_;
};

/// Distinct label patterns of the class on `points`, sorted
/// lexicographically. Duplicate points yield duplicated coordinates.
std::vector<BitPattern> project(const HypothesisClass& cls,
                                std::span<const PointId> points);

struct VcDimension {
  std::uint64_t value = 0;
  bool at_cap = false;  ///< the cap itself was shattered
};

/// Exact VC dimension by exhaustive shattering search up to `cap`.
VcDimension vc_dimension(const HypothesisClass& cls, std::uint64_t cap);

}  // namespace monoadv
