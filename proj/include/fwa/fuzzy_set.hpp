#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fwa/error.hpp"

namespace fwa {

/// A membership grade in the closed unit interval.
///
/// Only min and max are ever applied to grades, so a computed grade is always
/// bit-identical to one of the grades it was computed from. Exact comparison
/// is therefore the right default everywhere.
class Grade {
 public:
  constexpr Grade() = default;
  constexpr explicit Grade(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw Error(ErrorCode::GradeRange, "grade out of range [0,1]: " + std::to_string(value));
    }
  }

  static constexpr Grade zero() { return Grade(); }
  static constexpr Grade one() { return Grade(1.0); }

  constexpr double value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0.0; }

  constexpr auto operator<=>(const Grade&) const = default;

 private:
  double value_ = 0.0;
};

/// Lattice meet (min).
constexpr Grade meet(Grade a, Grade b) { return b < a ? b : a; }
/// Lattice join (max).
constexpr Grade join(Grade a, Grade b) { return a < b ? b : a; }

/// An ordered finite set of element ids. Elements are kept in lexicographic
/// order so that two universes built from the same ids in any order compare
/// equal and serialize identically.
class Universe {
 public:
  explicit Universe(std::vector<std::string> ids);

  static std::shared_ptr<const Universe> make(std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::string& id(std::size_t index) const { return ids_.at(index); }
  std::span<const std::string> ids() const { return ids_; }

  std::optional<std::size_t> find(std::string_view id) const;
  /// Like find(), but throws ErrorCode::UnknownId naming `what`.
  std::size_t index(std::string_view id, std::string_view what = "element") const;

  bool contains(std::string_view id) const { return find(id).has_value(); }

  bool operator==(const Universe& other) const { return ids_ == other.ids_; }

 private:
  std::vector<std::string> ids_;
};

using UniversePtr = std::shared_ptr<const Universe>;

bool same_universe(const UniversePtr& a, const UniversePtr& b);

/// A fuzzy subset of a finite universe. Grades are stored densely in
/// universe order; elements not mentioned at construction have grade 0.
class FuzzySet {
 public:
  /// The empty fuzzy set over `universe`.
  explicit FuzzySet(UniversePtr universe);
  FuzzySet(UniversePtr universe, std::vector<Grade> grades);

  static FuzzySet singleton(UniversePtr universe, std::size_t index);
  /// Builds from id → grade pairs. Unknown ids and out-of-range grades throw.
  static FuzzySet from_map(UniversePtr universe, const std::map<std::string, double>& grades);

  const UniversePtr& universe() const { return universe_; }
  std::size_t size() const { return grades_.size(); }
  std::span<const Grade> grades() const { return grades_; }

  Grade operator[](std::size_t index) const { return grades_[index]; }
  Grade at(std::string_view id) const;

  /// True iff every grade is zero.
  bool empty() const;

  /// Pointwise A ⊆ B. Throws on universe mismatch.
  bool subset_of(const FuzzySet& other) const;

  /// Sparse id → grade view (zero grades omitted).
  std::map<std::string, double> to_map() const;

  /// Pointwise equality over equal universes.
  bool operator==(const FuzzySet& other) const;

 private:
  UniversePtr universe_;
  std::vector<Grade> grades_;
};

/// Throws ErrorCode::UniverseMismatch unless both sets share a universe.
void require_same_universe(const FuzzySet& a, const FuzzySet& b, std::string_view context);

FuzzySet set_union(const FuzzySet& a, const FuzzySet& b);
FuzzySet intersection(const FuzzySet& a, const FuzzySet& b);
/// (λ·A)(x) = λ ∧ A(x)
FuzzySet scale_product(Grade lambda, const FuzzySet& a);
Grade height(const FuzzySet& a);
/// Ids with positive grade, in universe order.
std::vector<std::string> support(const FuzzySet& a);

/// Extension principle: f(A)(y) = max{ A(x) : f(x) = y }.
/// `mapping[i]` is the target index of source element i.
FuzzySet zadeh_image(std::span<const std::size_t> mapping, const FuzzySet& a, UniversePtr target);
/// Same, with the map given by ids. Throws if f is undefined on some element.
FuzzySet zadeh_image(const std::map<std::string, std::string>& mapping, const FuzzySet& a,
                     UniversePtr target);

/// Upper fuzzy description of A against a named family of meanings:
/// D_A(l) = height(M_l ∩ A). `names` indexes `meanings`.
FuzzySet fuzzy_description(const UniversePtr& names, std::span<const FuzzySet> meanings,
                           const FuzzySet& a);

/// Pointwise |A(x) − B(x)| ≤ tolerance. Only for matching decimally rounded
/// printed values; computed results should be compared with ==.
bool approx_equal(const FuzzySet& a, const FuzzySet& b, double tolerance = 0.0);

}  // namespace fwa
