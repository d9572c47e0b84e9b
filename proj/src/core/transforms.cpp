#include "fwa/transforms.hpp"

#include <cmath>
#include <limits>

namespace fwa {

Facv retract(const Facw& m) {
  const auto& states = m.states();
  const auto& sigma = m.underlying_alphabet();
  std::vector<FuzzySet> rows;
  rows.reserve(states->size() * sigma->size());
  for (State q = 0; q < states->size(); ++q) {
    for (Symbol a = 0; a < sigma->size(); ++a) {
      std::vector<Grade> row(states->size());
      for (std::size_t w = 0; w < m.word_count(); ++w) {
        Grade fire = m.word(w)[a];
        if (fire.is_zero()) continue;
        const FuzzySet& target = m.delta(q, w);
        for (State r = 0; r < row.size(); ++r) row[r] = join(row[r], meet(fire, target[r]));
      }
      rows.emplace_back(states, std::move(row));
    }
  }
  return Facv(states, sigma, std::move(rows), m.initial(), m.final_states());
}

namespace {

struct StatesOf {
  const UniversePtr& operator()(const std::shared_ptr<const Facw>& m) const { return m->states(); }
  const UniversePtr& operator()(const std::shared_ptr<const Facv>& m) const { return m->states(); }
};

void check_input(const UniversePtr& alphabet, const FuzzySet& a) {
  if (!same_universe(alphabet, a.universe())) {
    throw Error(ErrorCode::UniverseMismatch, "input word does not live on the underlying alphabet");
  }
}

// Each word A contributes its match degree height(A ∩ A′) scaled onto δ̃(q,A).
FuzzySet generalized_step(const Facw& m, State q, const FuzzySet& input) {
  check_input(m.underlying_alphabet(), input);
  FuzzySet match = fuzzy_description(m.word_names(), m.words(), input);
  std::vector<Grade> out(m.states()->size());
  for (std::size_t w = 0; w < m.word_count(); ++w) {
    if (match[w].is_zero()) continue;
    const FuzzySet& target = m.delta(q, w);
    for (State r = 0; r < out.size(); ++r) out[r] = join(out[r], meet(match[w], target[r]));
  }
  return FuzzySet(m.states(), std::move(out));
}

FuzzySet zadeh_step(const Facv& m, State p, const FuzzySet& input) {
  check_input(m.alphabet(), input);
  std::vector<Grade> out(m.states()->size());
  for (Symbol a = 0; a < input.size(); ++a) {
    if (input[a].is_zero()) continue;
    const FuzzySet& target = m.delta(p, a);
    for (State r = 0; r < out.size(); ++r) out[r] = join(out[r], meet(input[a], target[r]));
  }
  return FuzzySet(m.states(), std::move(out));
}

}  // namespace

const UniversePtr& Facaw::states() const { return std::visit(StatesOf{}, source_); }

const UniversePtr& Facaw::alphabet() const {
  if (auto* w = std::get_if<std::shared_ptr<const Facw>>(&source_)) return (*w)->underlying_alphabet();
  return std::get<std::shared_ptr<const Facv>>(source_)->alphabet();
}

State Facaw::initial() const {
  return std::visit([](const auto& m) { return m->initial(); }, source_);
}

const FuzzySet& Facaw::final_states() const {
  return std::visit([](const auto& m) -> const FuzzySet& { return m->final_states(); }, source_);
}

FuzzySet Facaw::transition(State q, const FuzzySet& a) const {
  if (q >= states()->size()) throw Error(ErrorCode::UnknownId, "state index out of range");
  if (auto* w = std::get_if<std::shared_ptr<const Facw>>(&source_)) return generalized_step(**w, q, a);
  return zadeh_step(*std::get<std::shared_ptr<const Facv>>(source_), q, a);
}

FuzzySet Facaw::extended(State p, std::span<const FuzzySet> input) const {
  if (p >= states()->size()) throw Error(ErrorCode::UnknownId, "state index out of range");
  FuzzySet current = FuzzySet::singleton(states(), p);
  for (const auto& a : input) {
    check_input(alphabet(), a);
    std::vector<Grade> next(current.size());
    for (State q = 0; q < current.size(); ++q) {
      if (current[q].is_zero()) continue;
      FuzzySet row = transition(q, a);
      for (State r = 0; r < next.size(); ++r) next[r] = join(next[r], meet(current[q], row[r]));
    }
    current = FuzzySet(states(), std::move(next));
  }
  return current;
}

Facaw gen_extend(const Facw& m) { return Facaw(std::make_shared<const Facw>(m)); }

Facaw extend_facv(const Facv& m) { return Facaw(std::make_shared<const Facv>(m)); }

Grade word_accept(const Facaw& m, std::span<const FuzzySet> input) {
  return height(intersection(m.extended(m.initial(), input), m.final_states()));
}

Grade word_accept(const Facaw& m, const Facw& base, std::span<const std::size_t> words) {
  WordString input;
  input.reserve(words.size());
  for (auto w : words) {
    if (w >= base.word_count()) throw Error(ErrorCode::UnknownId, "word index out of range");
    input.push_back(base.word(w));
  }
  return word_accept(m, input);
}

bool is_delta_preserving(const Facw& m) {
  for (State p = 0; p < m.states()->size(); ++p) {
    for (std::size_t w = 0; w < m.word_count(); ++w) {
      if (generalized_step(m, p, m.word(w)) != m.delta(p, w)) return false;
    }
  }
  return true;
}

bool preservation_conditions_hold(const Facw& m) {
  const std::size_t n_states = m.states()->size();
  const std::size_t n_sigma = m.underlying_alphabet()->size();
  for (State p = 0; p < n_states; ++p) {
    for (State q = 0; q < n_states; ++q) {
      for (std::size_t w = 0; w < m.word_count(); ++w) {
        const FuzzySet& word = m.word(w);
        const Grade t = m.delta(p, w)[q];
        // Condition 1, with the supremum over an empty alphabet read as 0.
        if (height(word) < t) return false;
        // Condition 2.
        for (Symbol a = 0; a < n_sigma; ++a) {
          if (!(word[a] > t)) continue;
          for (std::size_t other = 0; other < m.word_count(); ++other) {
            if (other == w) continue;
            if (!(m.word(other)[a] <= t || m.delta(p, other)[q] <= t)) return false;
          }
        }
      }
    }
  }
  return true;
}

std::uint64_t saturating_pow(std::uint64_t n, std::size_t k) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && out > std::numeric_limits<std::uint64_t>::max() / n) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= n;
  }
  return out;
}

namespace {

struct IndependenceSearch {
  const Facw& m;
  std::size_t max_len;
  std::vector<FuzzySet> extension_rows;  // δ†(q, A) at [q * |Σ̃| + A]
  IndependenceReport report;
  std::vector<std::size_t> prefix;

  FuzzySet extension_step(const FuzzySet& current, std::size_t w) const {
    std::vector<Grade> next(current.size());
    for (State q = 0; q < current.size(); ++q) {
      if (current[q].is_zero()) continue;
      const FuzzySet& row = extension_rows[q * m.word_count() + w];
      for (State r = 0; r < next.size(); ++r) next[r] = join(next[r], meet(current[q], row[r]));
    }
    return FuzzySet(m.states(), std::move(next));
  }

  void visit(const FuzzySet& base, const FuzzySet& extended) {
    ++report.strings;
    const double lhs = height(intersection(extended, m.final_states())).value();
    const double rhs = height(intersection(base, m.final_states())).value();
    const double diff = std::fabs(lhs - rhs);
    if (diff > report.bound || (diff == report.bound && prefix.size() < report.witness.size())) {
      report.bound = diff;
      report.witness = prefix;
    }
    if (prefix.size() == max_len) return;
    for (std::size_t w = 0; w < m.word_count(); ++w) {
      prefix.push_back(w);
      visit(step(m.machine(), base, w), extension_step(extended, w));
      prefix.pop_back();
    }
  }
};

}  // namespace

IndependenceReport independence_degree(const Facw& m, std::size_t max_len, std::uint64_t budget) {
  const std::uint64_t count = saturating_pow(m.word_count(), max_len);
  if (count > budget) {
    throw Error(ErrorCode::BudgetExceeded, "independence search needs |words|^max_len = " +
                                               std::to_string(m.word_count()) + "^" + std::to_string(max_len) +
                                               " strings, above the budget of " + std::to_string(budget));
  }
  IndependenceSearch search{m, max_len, {}, {}, {}};
  search.report.max_len = max_len;
  search.extension_rows.reserve(m.states()->size() * m.word_count());
  for (State q = 0; q < m.states()->size(); ++q) {
    for (std::size_t w = 0; w < m.word_count(); ++w) search.extension_rows.push_back(generalized_step(m, q, m.word(w)));
  }
  FuzzySet start = FuzzySet::singleton(m.states(), m.initial());
  search.visit(start, start);
  return search.report;
}

ConsistencyVerdict is_consistent(const Facw& m, std::size_t max_len, std::uint64_t budget) {
  ConsistencyVerdict verdict;
  verdict.horizon = max_len;
  verdict.report = independence_degree(m, max_len, budget);
  verdict.consistent = verdict.report.bound == 0.0;
  verdict.definitive = !verdict.consistent || is_delta_preserving(m);
  return verdict;
}

}  // namespace fwa
