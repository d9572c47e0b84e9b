#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fwa/fuzzy_set.hpp"

namespace fwa {

using State = std::size_t;
using Symbol = std::size_t;

/// A string over a finite input alphabet, as alphabet indices. The empty
/// vector is ε.
using SymbolString = std::vector<Symbol>;
/// A string of words drawn from all fuzzy subsets of the underlying alphabet.
using WordString = std::vector<FuzzySet>;

/// Max-min fuzzy automaton over a finite alphabet of crisp symbols
/// (computing with values).
///
/// Transitions are stored as one fuzzy set over the states per
/// (state, symbol) pair; rows never mentioned at construction are empty.
class Facv {
 public:
  /// `delta` is row-major: delta[p * |alphabet| + a]. Every row and `final`
  /// must live on `states`.
  Facv(UniversePtr states, UniversePtr alphabet, std::vector<FuzzySet> delta, State initial,
       FuzzySet final);

  const UniversePtr& states() const { return states_; }
  const UniversePtr& alphabet() const { return alphabet_; }
  State initial() const { return initial_; }
  const FuzzySet& final_states() const { return final_; }

  const FuzzySet& delta(State p, Symbol a) const { return delta_[p * alphabet_->size() + a]; }
  std::span<const FuzzySet> delta_rows() const { return delta_; }

  bool operator==(const Facv& other) const;

 private:
  UniversePtr states_;
  UniversePtr alphabet_;
  std::vector<FuzzySet> delta_;
  State initial_;
  FuzzySet final_;
};

/// Fuzzy automaton whose inputs are named words, each word a fuzzy subset of
/// an underlying symbol alphabet (computing with words).
///
/// Transitions are keyed by word name. machine() exposes the automaton with
/// the word names as its input alphabet, which is all the string semantics
/// needs.
class Facw {
 public:
  /// `words[i]` is the meaning of `word_names->id(i)` and must live on
  /// `underlying`. Distinct names must carry distinct fuzzy sets.
  Facw(UniversePtr states, UniversePtr underlying, UniversePtr word_names, std::vector<FuzzySet> words,
       std::vector<FuzzySet> delta, State initial, FuzzySet final);

  const Facv& machine() const { return machine_; }

  const UniversePtr& states() const { return machine_.states(); }
  const UniversePtr& underlying_alphabet() const { return underlying_; }
  const UniversePtr& word_names() const { return machine_.alphabet(); }
  std::size_t word_count() const { return words_.size(); }
  const FuzzySet& word(std::size_t w) const { return words_[w]; }
  std::span<const FuzzySet> words() const { return words_; }

  State initial() const { return machine_.initial(); }
  const FuzzySet& final_states() const { return machine_.final_states(); }
  const FuzzySet& delta(State p, std::size_t w) const { return machine_.delta(p, w); }

  bool operator==(const Facw& other) const;

 private:
  Facv machine_;
  UniversePtr underlying_;
  std::vector<FuzzySet> words_;
};

/// Incremental construction by ids; used by the loader and by tests.
class FacvBuilder {
 public:
  FacvBuilder(std::vector<std::string> states, std::vector<std::string> alphabet, std::string initial);

  FacvBuilder& final_grade(std::string_view state, double grade);
  FacvBuilder& transition(std::string_view from, std::string_view symbol, std::string_view to, double grade);

  Facv build() const;

 private:
  UniversePtr states_;
  UniversePtr alphabet_;
  State initial_;
  std::vector<std::vector<Grade>> delta_;
  std::vector<Grade> final_;
};

class FacwBuilder {
 public:
  FacwBuilder(std::vector<std::string> states, std::vector<std::string> underlying,
              std::map<std::string, std::map<std::string, double>> words, std::string initial);

  FacwBuilder& final_grade(std::string_view state, double grade);
  FacwBuilder& transition(std::string_view from, std::string_view word, std::string_view to, double grade);

  Facw build() const;

 private:
  UniversePtr underlying_;
  std::vector<FuzzySet> words_;
  FacvBuilder machine_;
};

/// Resolves whitespace-separated token names against `alphabet`.
/// Throws ErrorCode::UnknownId naming the first unresolvable token.
SymbolString parse_tokens(const Universe& alphabet, std::string_view tokens);

/// δ(p, ε) = 1/p;  δ(p, wa) = ∪_q [ δ(p,w)(q) · δ(q,a) ].
FuzzySet extended_delta(const Facv& m, State p, std::span<const Symbol> input);
FuzzySet extended_delta(const Facw& m, State p, std::span<const std::size_t> words);

/// One step of the fold above: ∪_q [ current(q) · δ(q,a) ].
FuzzySet step(const Facv& m, const FuzzySet& current, Symbol a);

/// Acceptance degree height(δ(q0, w) ∩ F).
Grade accept(const Facv& m, std::span<const Symbol> input);
Grade accept(const Facw& m, std::span<const std::size_t> words);

/// Every underlying symbol has positive grade in at least one word.
bool is_complete(const Facw& m);

/// Views a crisp-symbol automaton as one over singleton words: each symbol a
/// becomes the word 1/a, named like the symbol.
Facw lift_facv(const Facv& m);

}  // namespace fwa
