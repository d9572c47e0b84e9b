#pragma once

#include <map>
#include <string>
#include <vector>

#include "fwa/automaton.hpp"

namespace fwa {

/// A total map between two state sets.
class StateMap {
 public:
  StateMap(UniversePtr source, UniversePtr target, std::vector<State> image);

  /// Throws if some source state is unmapped or an id is unknown.
  static StateMap from_ids(UniversePtr source, UniversePtr target,
                           const std::map<std::string, std::string>& mapping);
  static StateMap identity(UniversePtr states);

  const UniversePtr& source() const { return source_; }
  const UniversePtr& target() const { return target_; }
  State operator()(State q) const { return image_[q]; }

  /// f(Q1), in target order.
  std::vector<State> range() const;
  std::map<std::string, std::string> to_ids() const;

 private:
  UniversePtr source_;
  UniversePtr target_;
  std::vector<State> image_;
};

/// Product over a shared input alphabet. States are named "(p,q)".
/// Throws ErrorCode::AlphabetMismatch when the alphabets differ; for Facws,
/// the word sets must agree by name and by value.
Facv product(const Facv& m1, const Facv& m2);
Facw product(const Facw& m1, const Facw& m2);

struct HomomorphismCheck {
  bool holds = false;
  /// 0 when the map is a homomorphism, else the first violated condition:
  /// 1 initial state, 2 transition supremum, 3 final grades.
  int violated = 0;
  std::string detail;

  explicit operator bool() const { return holds; }
};

/// Checks that f(q01) = q02, that
///   δ2(f(p),σ)(f(q)) = ∨{ δ1(p,σ)(r) : f(r) = f(q) }
/// for every p, q, σ, and that F1(q) ≤ F2(f(q)).
HomomorphismCheck check_homomorphism(const StateMap& f, const Facv& m1, const Facv& m2);
HomomorphismCheck check_homomorphism(const StateMap& f, const Facw& m1, const Facw& m2);

inline bool is_homomorphism(const StateMap& f, const Facv& m1, const Facv& m2) {
  return check_homomorphism(f, m1, m2).holds;
}
inline bool is_homomorphism(const StateMap& f, const Facw& m1, const Facw& m2) {
  return check_homomorphism(f, m1, m2).holds;
}

/// (f(Q1), Σ, δ2 restricted to f(Q1), q02, F2 restricted to f(Q1)).
/// Transition rows are restricted on both sides, so grades leading out of
/// f(Q1) are dropped. Throws ErrorCode::NotHomomorphism unless f is one.
Facv hom_image(const StateMap& f, const Facv& m1, const Facv& m2);
Facw hom_image(const StateMap& f, const Facw& m1, const Facw& m2);

/// M1 ≤ M2: Q1 ⊆ Q2, same initial state, F1 ⊆ F2 on Q1, and
/// δ1(p,σ)(q) = δ2(p,σ)(q) for all p, q ∈ Q1. Different alphabets give false.
bool is_subautomaton(const Facv& m1, const Facv& m2);
bool is_subautomaton(const Facw& m1, const Facw& m2);

}  // namespace fwa
