#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fwa/algebra.hpp"
#include "fwa/transforms.hpp"

/// Brute-force oracles. Everything here works from the word-level automaton
/// alone (its words, its transition table, its word language) and never
/// calls retract() or gen_extend(), so it can be used to check them.
namespace fwa::verify {

/// ∨_{A1..An ∈ Σ̃} [ L_w(M)(A1···An) ∧ A1(a1) ∧ ··· ∧ An(an) ] for w = a1···an.
/// Throws ErrorCode::BudgetExceeded if |Σ̃|^n > budget.
Grade retraction_language_by_words(const Facw& m, std::span<const Symbol> input,
                                   std::uint64_t budget = kDefaultBudget);

/// ∨_{A1..An ∈ Σ̃} ∨_{a1..an ∈ Σ} [ L_w(M)(A1···An) ∧ ⋀ Ai(ai) ∧ ⋀ A′i(ai) ]
/// for W = A′1···A′n. Budget is on (|Σ̃|·|Σ|)^n.
Grade extension_language_by_words(const Facw& m, std::span<const FuzzySet> input,
                                  std::uint64_t budget = kDefaultBudget);

/// q ↦ ∨_{A1..An} [ δ̃(p, A1···An)(q) ∧ A1(a1) ∧ ··· ∧ An(an) ].
FuzzySet retraction_delta_closed_form(const Facw& m, State p, std::span<const Symbol> input,
                                      std::uint64_t budget = kDefaultBudget);

/// q ↦ ∨_{A1..An} ∨_{a1..an} [ δ̃(p, A1···An)(q) ∧ ⋀ Ai(ai) ∧ ⋀ A′i(ai) ].
FuzzySet extension_delta_closed_form(const Facw& m, State p, std::span<const FuzzySet> input,
                                     std::uint64_t budget = kDefaultBudget);

struct GeneratorBounds {
  std::size_t max_states = 4;
  std::size_t max_symbols = 3;
  std::size_t max_words = 3;
};

/// Seeded random instances. Grades come from the 11-value pool
/// {0, 0.1, ..., 1}, so ties between grades are common.
class InstanceGenerator {
 public:
  InstanceGenerator(std::uint64_t seed, GeneratorBounds bounds = {});
  /// Independent stream for trial `trial` of suite `stream`.
  InstanceGenerator(std::uint64_t seed, std::string_view stream, std::uint64_t trial, GeneratorBounds bounds = {});

  std::size_t below(std::size_t n);
  std::size_t between(std::size_t lo, std::size_t hi);
  bool coin();

  Grade grade();
  Grade grade_at_most(Grade hi);
  Grade grade_at_least(Grade lo);

  static UniversePtr state_names(std::size_t n, std::string_view prefix = "q");
  static UniversePtr symbol_names(std::size_t n);

  /// Roughly a third of the entries are zero.
  FuzzySet fuzzy_set(const UniversePtr& universe);
  /// `count` pairwise distinct fuzzy sets.
  std::vector<FuzzySet> distinct_words(const UniversePtr& sigma, std::size_t count);

  Facv facv();
  Facv facv(const UniversePtr& alphabet);
  Facw facw();
  /// A Facw over the same underlying alphabet and word set as `like`.
  Facw facw_like(const Facw& like);
  Facw facw(const UniversePtr& sigma, const UniversePtr& names, std::vector<FuzzySet> words);

  SymbolString symbol_string(std::size_t alphabet, std::size_t length);

  const GeneratorBounds& bounds() const { return bounds_; }

 private:
  std::mt19937_64 rng_;
  GeneratorBounds bounds_;
};

/// Calls `fn` on every string over {0..k-1} of length ≤ max_len, shortest
/// first, lexicographic within a length.
template <class Fn>
void for_each_string(std::size_t k, std::size_t max_len, Fn&& fn) {
  std::vector<std::size_t> s;
  for (std::size_t len = 0; len <= max_len; ++len) {
    s.assign(len, 0);
    if (len > 0 && k == 0) return;
    while (true) {
      fn(std::span<const std::size_t>(s));
      std::size_t i = len;
      while (i > 0 && ++s[i - 1] == k) s[--i] = 0;
      if (i == 0) break;
    }
  }
}

struct CheckConfig {
  /// Suite names, or {"all"}.
  std::vector<std::string> suites{"all"};
  std::size_t trials = 100;
  std::uint64_t seed = 7;
  GeneratorBounds bounds;
  /// Longest symbol or word string enumerated exhaustively.
  std::size_t max_len = 3;
  /// Longest string over Σ̃ plus random fuzzy tokens.
  std::size_t max_fuzzy_len = 2;
  /// Random fuzzy tokens added to Σ̃ for fuzzy-input suites.
  std::size_t fuzzy_tokens = 20;
  std::uint64_t budget = kDefaultBudget;
};

struct CheckFailure {
  std::size_t trial = 0;
  std::string automaton;  // canonical JSON, replayable through the CLI
  std::string input;
  std::string lhs;
  std::string rhs;
  std::string detail;
};

struct CheckReport {
  std::string suite;
  std::size_t instances = 0;
  /// Instances where a checked inequality held strictly.
  std::size_t strict = 0;
  std::size_t failed = 0;
  /// The first few failures, for replay.
  std::vector<CheckFailure> failures;
  double elapsed_ms = 0.0;
  /// False when the budget ran out before all trials finished.
  bool complete = true;

  bool passed() const { return failed == 0 && complete; }
};

/// Every suite run_checks() knows, in execution order.
std::span<const std::string_view> suite_names();

/// Throws ErrorCode::InvalidArgument for an unknown suite name.
CheckReport run_suite(std::string_view suite, const CheckConfig& config);
std::vector<CheckReport> run_checks(const CheckConfig& config);

/// Deterministic JSON. Timing is included only on request, since it is the
/// one field that differs between runs.
std::string report_json(std::span<const CheckReport> reports, const CheckConfig& config, bool timing = false);
std::string report_table(std::span<const CheckReport> reports);

}  // namespace fwa::verify
