#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <variant>

#include "fwa/automaton.hpp"

namespace fwa {

/// Default cap on the number of enumerated tuples or strings per query.
inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// Collapses words to crisp symbols:
///   δ↓(q,a)(q′) = ∨_{A∈Σ̃} [ A(a) ∧ δ̃(q,A)(q′) ].
/// An empty word set yields all-empty rows.
Facv retract(const Facw& m);

/// Automaton accepting every fuzzy subset of the underlying alphabet as an
/// input. Transitions are evaluated on demand; nothing is tabulated.
///
/// Built either from a Facw (generalized extension) or from a Facv (Zadeh
/// extension of its transition function). The two evaluators are kept
/// separate so each can serve as a check on the other.
class Facaw {
 public:
  const UniversePtr& states() const;
  /// The underlying symbol alphabet every input word must live on.
  const UniversePtr& alphabet() const;
  State initial() const;
  const FuzzySet& final_states() const;

  /// Next-state distribution for input word `a` at state `q`.
  FuzzySet transition(State q, const FuzzySet& a) const;
  /// Fold of transition() over `input`, starting from 1/p.
  FuzzySet extended(State p, std::span<const FuzzySet> input) const;

 private:
  friend Facaw gen_extend(const Facw& m);
  friend Facaw extend_facv(const Facv& m);

  using Source = std::variant<std::shared_ptr<const Facw>, std::shared_ptr<const Facv>>;
  explicit Facaw(Source source) : source_(std::move(source)) {}

  Source source_;
};

/// δ†(q,A′)(q′) = ∨_{A∈Σ̃} ∨_{a∈Σ} [ A(a) ∧ A′(a) ∧ δ̃(q,A)(q′) ].
Facaw gen_extend(const Facw& m);

/// δ̂(p,A) = ∪_{a∈Σ} [ A(a) · δ(p,a) ].
Facaw extend_facv(const Facv& m);

/// height(extended(q0, W) ∩ F).
Grade word_accept(const Facaw& m, std::span<const FuzzySet> input);

/// Word-string acceptance where each token is a word of Σ̃ named by index,
/// evaluated through the extension. Convenience for comparing both sides on
/// Σ̃*.
Grade word_accept(const Facaw& m, const Facw& base, std::span<const std::size_t> words);

/// δ†(p,A) = δ̃(p,A) for every state p and word A ∈ Σ̃, by direct evaluation.
bool is_delta_preserving(const Facw& m);

/// The syntactic characterization of delta preservation, evaluated literally:
/// for all p, q, A with t = δ̃(p,A)(q):
///   1) some a has A(a) ≥ t;
///   2) for every a with A(a) > t and every other word A′,
///      A′(a) ≤ t or δ̃(p,A′)(q) ≤ t.
bool preservation_conditions_hold(const Facw& m);

struct IndependenceReport {
  std::size_t max_len = 0;
  /// max over |W| ≤ max_len of |L_w(M↑)(W) − L_w(M)(W)|. A lower bound on
  /// the supremum over all of Σ̃*.
  double bound = 0.0;
  /// First string in length-lexicographic order attaining the bound.
  std::vector<std::size_t> witness;
  /// Number of word strings compared.
  std::uint64_t strings = 0;
};

/// Exhaustive bounded-horizon search. Throws ErrorCode::BudgetExceeded when
/// |Σ̃|^max_len exceeds `budget`.
IndependenceReport independence_degree(const Facw& m, std::size_t max_len,
                                       std::uint64_t budget = kDefaultBudget);

struct ConsistencyVerdict {
  bool consistent = false;
  /// True when the verdict holds for all of Σ̃*: always for an inconsistency,
  /// and for consistency when delta preservation proves it outright.
  bool definitive = false;
  std::size_t horizon = 0;
  IndependenceReport report;
};

ConsistencyVerdict is_consistent(const Facw& m, std::size_t max_len, std::uint64_t budget = kDefaultBudget);

/// n^k, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t n, std::size_t k);

}  // namespace fwa
