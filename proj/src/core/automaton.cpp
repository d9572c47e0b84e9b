#include "fwa/automaton.hpp"

#include <algorithm>
#include <cctype>

namespace fwa {

namespace {

void check_on_states(const FuzzySet& s, const UniversePtr& states, const char* what) {
  if (!same_universe(s.universe(), states)) {
    throw Error(ErrorCode::UniverseMismatch, std::string(what) + " does not live on the state set");
  }
}

}  // namespace

Facv::Facv(UniversePtr states, UniversePtr alphabet, std::vector<FuzzySet> delta, State initial,
           FuzzySet final)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      delta_(std::move(delta)),
      initial_(initial),
      final_(std::move(final)) {
  if (initial_ >= states_->size()) {
    throw Error(ErrorCode::InvalidArgument, "initial state is not a state");
  }
  if (delta_.size() != states_->size() * alphabet_->size()) {
    throw Error(ErrorCode::InvalidArgument, "transition table is not |Q| x |alphabet|");
  }
  check_on_states(final_, states_, "final set");
  for (const auto& row : delta_) check_on_states(row, states_, "transition row");
}

bool Facv::operator==(const Facv& other) const {
  return *states_ == *other.states_ && *alphabet_ == *other.alphabet_ && initial_ == other.initial_ &&
         final_ == other.final_ && delta_ == other.delta_;
}

Facw::Facw(UniversePtr states, UniversePtr underlying, UniversePtr word_names, std::vector<FuzzySet> words,
           std::vector<FuzzySet> delta, State initial, FuzzySet final)
    : machine_(std::move(states), std::move(word_names), std::move(delta), initial, std::move(final)),
      underlying_(std::move(underlying)),
      words_(std::move(words)) {
  if (words_.size() != machine_.alphabet()->size()) {
    throw Error(ErrorCode::InvalidArgument, "word meanings do not match the word names");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!same_universe(words_[i].universe(), underlying_)) {
      throw Error(ErrorCode::UniverseMismatch,
                  "word '" + machine_.alphabet()->id(i) + "' does not live on the underlying alphabet");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (words_[i] == words_[j]) {
        throw Error(ErrorCode::InvalidArgument, "words '" + machine_.alphabet()->id(j) + "' and '" +
                                                    machine_.alphabet()->id(i) + "' denote the same fuzzy set");
      }
    }
  }
}

bool Facw::operator==(const Facw& other) const {
  return machine_ == other.machine_ && *underlying_ == *other.underlying_ && words_ == other.words_;
}

FacvBuilder::FacvBuilder(std::vector<std::string> states, std::vector<std::string> alphabet,
                         std::string initial)
    : states_(Universe::make(std::move(states))),
      alphabet_(Universe::make(std::move(alphabet))),
      initial_(states_->index(initial, "initial state")),
      delta_(states_->size() * alphabet_->size(), std::vector<Grade>(states_->size())),
      final_(states_->size()) {}

FacvBuilder& FacvBuilder::final_grade(std::string_view state, double grade) {
  final_[states_->index(state, "state")] = Grade(grade);
  return *this;
}

FacvBuilder& FacvBuilder::transition(std::string_view from, std::string_view symbol, std::string_view to,
                                     double grade) {
  auto p = states_->index(from, "state");
  auto a = alphabet_->index(symbol, "input");
  auto q = states_->index(to, "state");
  delta_[p * alphabet_->size() + a][q] = Grade(grade);
  return *this;
}

Facv FacvBuilder::build() const {
  std::vector<FuzzySet> rows;
  rows.reserve(delta_.size());
  for (const auto& r : delta_) rows.emplace_back(states_, r);
  return Facv(states_, alphabet_, std::move(rows), initial_, FuzzySet(states_, final_));
}

namespace {

std::vector<std::string> keys_of(const std::map<std::string, std::map<std::string, double>>& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

}  // namespace

FacwBuilder::FacwBuilder(std::vector<std::string> states, std::vector<std::string> underlying,
                         std::map<std::string, std::map<std::string, double>> words, std::string initial)
    : underlying_(Universe::make(std::move(underlying))),
      machine_(std::move(states), keys_of(words), std::move(initial)) {
  for (const auto& [name, grades] : words) words_.push_back(FuzzySet::from_map(underlying_, grades));
}

FacwBuilder& FacwBuilder::final_grade(std::string_view state, double grade) {
  machine_.final_grade(state, grade);
  return *this;
}

FacwBuilder& FacwBuilder::transition(std::string_view from, std::string_view word, std::string_view to,
                                     double grade) {
  machine_.transition(from, word, to, grade);
  return *this;
}

Facw FacwBuilder::build() const {
  Facv m = machine_.build();
  std::vector<FuzzySet> rows(m.delta_rows().begin(), m.delta_rows().end());
  return Facw(m.states(), underlying_, m.alphabet(), words_, std::move(rows), m.initial(), m.final_states());
}

SymbolString parse_tokens(const Universe& alphabet, std::string_view tokens) {
  SymbolString out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    while (i < tokens.size() && std::isspace(static_cast<unsigned char>(tokens[i]))) ++i;
    std::size_t j = i;
    while (j < tokens.size() && !std::isspace(static_cast<unsigned char>(tokens[j]))) ++j;
    if (j > i) out.push_back(alphabet.index(tokens.substr(i, j - i), "token"));
    i = j;
  }
  return out;
}

FuzzySet step(const Facv& m, const FuzzySet& current, Symbol a) {
  std::vector<Grade> next(m.states()->size());
  for (State q = 0; q < next.size(); ++q) {
    Grade reach = current[q];
    if (reach.is_zero()) continue;
    const FuzzySet& row = m.delta(q, a);
    for (State r = 0; r < next.size(); ++r) next[r] = join(next[r], meet(reach, row[r]));
  }
  return FuzzySet(m.states(), std::move(next));
}

FuzzySet extended_delta(const Facv& m, State p, std::span<const Symbol> input) {
  if (p >= m.states()->size()) throw Error(ErrorCode::UnknownId, "state index out of range");
  FuzzySet current = FuzzySet::singleton(m.states(), p);
  for (Symbol a : input) {
    if (a >= m.alphabet()->size()) throw Error(ErrorCode::UnknownId, "input index out of range");
    current = step(m, current, a);
  }
  return current;
}

FuzzySet extended_delta(const Facw& m, State p, std::span<const std::size_t> words) {
  return extended_delta(m.machine(), p, words);
}

Grade accept(const Facv& m, std::span<const Symbol> input) {
  return height(intersection(extended_delta(m, m.initial(), input), m.final_states()));
}

Grade accept(const Facw& m, std::span<const std::size_t> words) { return accept(m.machine(), words); }

bool is_complete(const Facw& m) {
  for (Symbol a = 0; a < m.underlying_alphabet()->size(); ++a) {
    bool covered = std::any_of(m.words().begin(), m.words().end(),
                               [a](const FuzzySet& w) { return !w[a].is_zero(); });
    if (!covered) return false;
  }
  return true;
}

Facw lift_facv(const Facv& m) {
  std::vector<FuzzySet> words;
  words.reserve(m.alphabet()->size());
  for (Symbol a = 0; a < m.alphabet()->size(); ++a) words.push_back(FuzzySet::singleton(m.alphabet(), a));
  std::vector<FuzzySet> rows(m.delta_rows().begin(), m.delta_rows().end());
  return Facw(m.states(), m.alphabet(), m.alphabet(), std::move(words), std::move(rows), m.initial(),
              m.final_states());
}

}  // namespace fwa
