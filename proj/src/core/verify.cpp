#include "fwa/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "fwa/io.hpp"

namespace fwa::verify {

namespace {

void require_budget(std::uint64_t count, std::uint64_t budget, const char* what) {
  if (count > budget) {
    throw Error(ErrorCode::BudgetExceeded, std::string("enumeration of ") + what + " needs " +
                                               std::to_string(count) + " tuples, budget is " +
                                               std::to_string(budget));
  }
}

// Odometer over {0..k-1}^n; false once it wraps.
bool next_tuple(std::vector<std::size_t>& t, std::size_t k) {
  for (std::size_t i = t.size(); i > 0; --i) {
    if (++t[i - 1] < k) return true;
    t[i - 1] = 0;
  }
  return false;
}

void check_symbols(const Facw& m, std::span<const Symbol> input) {
  for (Symbol a : input) {
    if (a >= m.underlying_alphabet()->size()) throw Error(ErrorCode::UnknownId, "symbol index out of range");
  }
}

void check_words(const Facw& m, std::span<const FuzzySet> input) {
  for (const auto& w : input) {
    if (!same_universe(w.universe(), m.underlying_alphabet())) {
      throw Error(ErrorCode::UniverseMismatch, "input word does not live on the underlying alphabet");
    }
  }
}

void check_state(const Facw& m, State p) {
  if (p >= m.states()->size()) throw Error(ErrorCode::UnknownId, "state index out of range");
}

// ⋀ Ai(ai) for the word tuple t against the symbol string.
Grade word_weight(const Facw& m, const std::vector<std::size_t>& t, std::span<const Symbol> input) {
  Grade g = Grade::one();
  for (std::size_t i = 0; i < t.size(); ++i) g = meet(g, m.word(t[i])[input[i]]);
  return g;
}

// ∨_{a-tuples} ⋀ [ Ai(ai) ∧ A′i(ai) ].
Grade pair_weight(const Facw& m, const std::vector<std::size_t>& t, std::span<const FuzzySet> input) {
  const std::size_t s = m.underlying_alphabet()->size();
  std::vector<std::size_t> u(t.size(), 0);
  Grade best = Grade::zero();
  if (s == 0) return best;
  do {
    Grade g = Grade::one();
    for (std::size_t i = 0; i < t.size() && !g.is_zero(); ++i) {
      g = meet(g, meet(m.word(t[i])[u[i]], input[i][u[i]]));
    }
    best = join(best, g);
  } while (next_tuple(u, s));
  return best;
}

}  // namespace

Grade retraction_language_by_words(const Facw& m, std::span<const Symbol> input, std::uint64_t budget) {
  check_symbols(m, input);
  const std::size_t k = m.word_count();
  require_budget(saturating_pow(k, input.size()), budget, "word tuples");
  std::vector<std::size_t> t(input.size(), 0);
  if (input.empty()) return accept(m, t);
  if (k == 0) return Grade::zero();
  Grade best = Grade::zero();
  do {
    Grade w = word_weight(m, t, input);
    if (!w.is_zero()) best = join(best, meet(w, accept(m, t)));
  } while (next_tuple(t, k));
  return best;
}

Grade extension_language_by_words(const Facw& m, std::span<const FuzzySet> input, std::uint64_t budget) {
  check_words(m, input);
  const std::size_t k = m.word_count();
  require_budget(saturating_pow(k * m.underlying_alphabet()->size(), input.size()), budget,
                 "word and symbol tuples");
  std::vector<std::size_t> t(input.size(), 0);
  if (input.empty()) return accept(m, t);
  if (k == 0) return Grade::zero();
  Grade best = Grade::zero();
  do {
    // L_w(M)(A1···An) does not depend on the symbol tuple, so evaluate it once.
    Grade lang = accept(m, t);
    if (!lang.is_zero()) best = join(best, meet(lang, pair_weight(m, t, input)));
  } while (next_tuple(t, k));
  return best;
}

FuzzySet retraction_delta_closed_form(const Facw& m, State p, std::span<const Symbol> input,
                                      std::uint64_t budget) {
  check_state(m, p);
  check_symbols(m, input);
  const std::size_t k = m.word_count();
  require_budget(saturating_pow(k, input.size()), budget, "word tuples");
  std::vector<std::size_t> t(input.size(), 0);
  if (input.empty()) return extended_delta(m, p, t);
  std::vector<Grade> out(m.states()->size());
  if (k == 0) return FuzzySet(m.states(), std::move(out));
  do {
    Grade w = word_weight(m, t, input);
    if (w.is_zero()) continue;
    FuzzySet reach = extended_delta(m, p, t);
    for (State q = 0; q < out.size(); ++q) out[q] = join(out[q], meet(w, reach[q]));
  } while (next_tuple(t, k));
  return FuzzySet(m.states(), std::move(out));
}

FuzzySet extension_delta_closed_form(const Facw& m, State p, std::span<const FuzzySet> input,
                                     std::uint64_t budget) {
  check_state(m, p);
  check_words(m, input);
  const std::size_t k = m.word_count();
  require_budget(saturating_pow(k * m.underlying_alphabet()->size(), input.size()), budget,
                 "word and symbol tuples");
  std::vector<std::size_t> t(input.size(), 0);
  if (input.empty()) return extended_delta(m, p, t);
  std::vector<Grade> out(m.states()->size());
  if (k == 0) return FuzzySet(m.states(), std::move(out));
  do {
    Grade w = pair_weight(m, t, input);
    if (w.is_zero()) continue;
    FuzzySet reach = extended_delta(m, p, t);
    for (State q = 0; q < out.size(); ++q) out[q] = join(out[q], meet(w, reach[q]));
  } while (next_tuple(t, k));
  return FuzzySet(m.states(), std::move(out));
}

// ---------------------------------------------------------------------------
// Instance generation

namespace {

constexpr std::size_t kPool = 11;

Grade pool(std::size_t i) { return Grade(static_cast<double>(i) / 10.0); }

// FNV-1a, so stream seeds do not depend on the standard library's hash.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::seed_seq::result_type lo32(std::uint64_t v) { return static_cast<std::seed_seq::result_type>(v); }
std::seed_seq::result_type hi32(std::uint64_t v) { return static_cast<std::seed_seq::result_type>(v >> 32); }

std::mt19937_64 seeded(std::uint64_t seed, std::string_view stream, std::uint64_t trial) {
  const std::uint64_t h = fnv1a(stream);
  std::seed_seq seq{lo32(seed), hi32(seed), lo32(h), hi32(h), lo32(trial), hi32(trial)};
  return std::mt19937_64(seq);
}

std::vector<FuzzySet> delta_rows(const Facw& m) {
  return {m.machine().delta_rows().begin(), m.machine().delta_rows().end()};
}

Facw with_delta(const Facw& m, std::vector<FuzzySet> rows) {
  return Facw(m.states(), m.underlying_alphabet(), m.word_names(), {m.words().begin(), m.words().end()},
              std::move(rows), m.initial(), m.final_states());
}

UniversePtr letters(std::size_t n, char first) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.emplace_back(1, static_cast<char>(first + i));
  return Universe::make(std::move(ids));
}

}  // namespace

InstanceGenerator::InstanceGenerator(std::uint64_t seed, GeneratorBounds bounds)
    : rng_(seed), bounds_(bounds) {}

InstanceGenerator::InstanceGenerator(std::uint64_t seed, std::string_view stream, std::uint64_t trial,
                                     GeneratorBounds bounds)
    : rng_(seeded(seed, stream, trial)), bounds_(bounds) {}

std::size_t InstanceGenerator::below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }

std::size_t InstanceGenerator::between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

bool InstanceGenerator::coin() { return (rng_() & 1U) != 0; }

Grade InstanceGenerator::grade() { return pool(below(kPool)); }

Grade InstanceGenerator::grade_at_most(Grade hi) {
  std::size_t n = 0;
  while (n < kPool && pool(n) <= hi) ++n;
  return pool(below(n));
}

Grade InstanceGenerator::grade_at_least(Grade lo) {
  std::size_t first = 0;
  while (first + 1 < kPool && pool(first) < lo) ++first;
  return pool(first + below(kPool - first));
}

UniversePtr InstanceGenerator::state_names(std::size_t n, std::string_view prefix) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(prefix) + std::to_string(i));
  return Universe::make(std::move(ids));
}

UniversePtr InstanceGenerator::symbol_names(std::size_t n) { return letters(n, 'a'); }

FuzzySet InstanceGenerator::fuzzy_set(const UniversePtr& universe) {
  std::vector<Grade> g(universe->size());
  for (auto& x : g) x = below(3) == 0 ? Grade::zero() : grade();
  return FuzzySet(universe, std::move(g));
}

std::vector<FuzzySet> InstanceGenerator::distinct_words(const UniversePtr& sigma, std::size_t count) {
  std::vector<FuzzySet> out;
  while (out.size() < count) {
    FuzzySet w = fuzzy_set(sigma);
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  }
  return out;
}

Facv InstanceGenerator::facv() { return facv(symbol_names(between(1, bounds_.max_symbols))); }

Facv InstanceGenerator::facv(const UniversePtr& alphabet) {
  auto states = state_names(between(1, bounds_.max_states));
  std::vector<FuzzySet> rows;
  for (std::size_t i = 0; i < states->size() * alphabet->size(); ++i) rows.push_back(fuzzy_set(states));
  State initial = below(states->size());
  return Facv(states, alphabet, std::move(rows), initial, fuzzy_set(states));
}

Facw InstanceGenerator::facw() {
  auto sigma = symbol_names(between(1, bounds_.max_symbols));
  auto names = letters(between(1, std::min<std::size_t>(bounds_.max_words, saturating_pow(kPool, sigma->size()))), 'A');
  return facw(sigma, names, distinct_words(sigma, names->size()));
}

Facw InstanceGenerator::facw_like(const Facw& like) {
  return facw(like.underlying_alphabet(), like.word_names(), {like.words().begin(), like.words().end()});
}

Facw InstanceGenerator::facw(const UniversePtr& sigma, const UniversePtr& names, std::vector<FuzzySet> words) {
  auto states = state_names(between(1, bounds_.max_states));
  std::vector<FuzzySet> rows;
  for (std::size_t i = 0; i < states->size() * names->size(); ++i) rows.push_back(fuzzy_set(states));
  State initial = below(states->size());
  return Facw(states, sigma, names, std::move(words), std::move(rows), initial, fuzzy_set(states));
}

SymbolString InstanceGenerator::symbol_string(std::size_t alphabet, std::size_t length) {
  SymbolString s(length);
  for (auto& a : s) a = below(alphabet);
  return s;
}

// ---------------------------------------------------------------------------
// Property suites

namespace {

constexpr std::size_t kRecordedFailures = 10;

std::string render(Grade g) { return io::format_grade(g.value()); }
std::string render(const FuzzySet& s) { return io::fuzzy_set_json(s); }
std::string render(const Facv& m) { return io::dump(m); }

std::string render_symbols(const Universe& alphabet, std::span<const std::size_t> s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ' ';
    out += alphabet.id(s[i]);
  }
  return out;
}

std::string render_words(std::span<const FuzzySet> s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ',';
    out += render(s[i]);
  }
  return out + "]";
}

WordString pick(const std::vector<FuzzySet>& tokens, std::span<const std::size_t> idx) {
  WordString out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(tokens[i]);
  return out;
}

class Suite {
 public:
  Suite(const CheckConfig& config, CheckReport& report) : config_(config), report_(report) {}

  const CheckConfig& config() const { return config_; }
  std::uint64_t budget() const { return config_.budget; }
  std::size_t trial() const { return trial_; }

  // Runs `body` once per trial with a fresh, independently seeded generator.
  void trials(const std::function<void(InstanceGenerator&)>& body) {
    for (trial_ = 0; trial_ < config_.trials; ++trial_) {
      InstanceGenerator gen(config_.seed, report_.suite, trial_, config_.bounds);
      body(gen);
    }
  }

  void count() { ++report_.instances; }
  void strict() { ++report_.strict; }

  void fail(std::string automaton, std::string input, std::string lhs, std::string rhs, std::string detail = {}) {
    ++report_.failed;
    if (report_.failures.size() < kRecordedFailures) {
      report_.failures.push_back(
          {trial_, std::move(automaton), std::move(input), std::move(lhs), std::move(rhs), std::move(detail)});
    }
  }

  // Counts an instance; records a failure unless lhs == rhs.
  template <class T>
  void expect_equal(const T& lhs, const T& rhs, const std::function<std::string()>& automaton,
                    const std::string& input, std::string detail = {}) {
    count();
    if (!(lhs == rhs)) fail(automaton(), input, render(lhs), render(rhs), std::move(detail));
  }

  // Counts an instance; records a failure unless lhs ≤ rhs, and a strict hit if lhs < rhs.
  void expect_at_most(Grade lhs, Grade rhs, const std::function<std::string()>& automaton,
                      const std::string& input, std::string detail = {}) {
    count();
    if (lhs > rhs) {
      fail(automaton(), input, render(lhs), render(rhs), std::move(detail));
    } else if (lhs < rhs) {
      strict();
    }
  }

  void expect(bool ok, const std::function<std::string()>& automaton, std::string detail) {
    count();
    if (!ok) fail(automaton(), {}, {}, {}, std::move(detail));
  }

 private:
  const CheckConfig& config_;
  CheckReport& report_;
  std::size_t trial_ = 0;
};

template <class M>
std::function<std::string()> dumper(const M& m) {
  return [&m] { return io::dump(m); };
}

// Σ̃ followed by random fuzzy subsets of Σ.
std::vector<FuzzySet> token_pool(InstanceGenerator& gen, const Facw& m, std::size_t extra) {
  std::vector<FuzzySet> tokens(m.words().begin(), m.words().end());
  for (std::size_t i = 0; i < extra; ++i) tokens.push_back(gen.fuzzy_set(m.underlying_alphabet()));
  return tokens;
}

WordString random_word_string(InstanceGenerator& gen, const std::vector<FuzzySet>& tokens, std::size_t length) {
  WordString out;
  for (std::size_t i = 0; i < length; ++i) out.push_back(tokens[gen.below(tokens.size())]);
  return out;
}

void retraction_principle(Suite& s) {
  s.trials([&](InstanceGenerator& gen) {
    Facw m = gen.facw();
    Facv r = retract(m);
    for_each_string(m.underlying_alphabet()->size(), s.config().max_len, [&](auto w) {
      s.expect_equal(accept(r, w), retraction_language_by_words(m, w, s.budget()), dumper(m),
                     render_symbols(*m.underlying_alphabet(), w));
    });
  });
}

void extension_principle(Suite& s) {
  s.trials([&](InstanceGenerator& gen) {
    Facw m = gen.facw();
    Facaw e = gen_extend(m);
    auto tokens = token_pool(gen, m, s.config().fuzzy_tokens);
    for_each_string(tokens.size(), s.config().max_fuzzy_len, [&](auto idx) {
      WordString w = pick(tokens, idx);
      s.expect_equal(word_accept(e, w), extension_language_by_words(m, w, s.budget()), dumper(m),
                     render_words(w));
    });
  });
}

void retraction_closed_form(Suite& s) {
  s.trials([&](InstanceGenerator& gen) {
    Facw m = gen.facw();
    Facv r = retract(m);
    for (State p = 0; p < m.states()->size(); ++p) {
      for_each_string(m.underlying_alphabet()->size(), s.config().max_len, [&](auto w) {
        s.expect_equal(extended_delta(r, p, w), retraction_delta_closed_form(m, p, w, s.budget()), dumper(m),
                       m.states()->id(p) + ": " + render_symbols(*m.underlying_alphabet(), w));
      });
    }
  });
}

void extension_closed_form(Suite& s) {
  s.trials([&](InstanceGenerator& gen) {
    Facw m = gen.facw();
    Facaw e = gen_extend(m);
    auto tokens = token_pool(gen, m, s.config().fuzzy_tokens);
    State p = gen.below(m.states()->size());
    auto check = [&](const WordString& w) {
      s.expect_equal(e.extended(p, w), extension_delta_closed_form(m, p, w, s.budget()), dumper(m),
                     m.states()->id(p) + ": " + render_words(w));
    };
    for_each_string(tokens.size(), s.config().max_fuzzy_len, [&](auto idx) { check(pick(tokens, idx)); });
    // A few longer strings, too many to enumerate.
    for (int i = 0; i < 5; ++i) check(random_word_string(gen, tokens, s.config().max_len));
  });
}

void singleton_extension(Suite& s) {
  s.trials([&](InstanceGenerator& gen) {
    Facv v = gen.facv();
    Facaw zadeh = extend_facv(v);
    Facaw general = gen_extend(lift_facv(v));
    FuzzySet a = gen.fuzzy_set(v.alphabet());
    for (State p = 0; p < v.states()->size(); ++p) {
      s.expect_equal(zadeh.transition(p, a), general.transition(p, a), dumper(v),
                     v.states()->id(p) + ": " + render(a));
    }
    WordString w;
    for (std::size_t i = gen.between(0, s.config().max_fuzzy_len); i > 0; --i) w.push_back(gen.fuzzy_set(v.alphabet()));
    s.expect_equal(word_accept(zadeh, w), word_accept(general, w), dumper(v), render_words(w));
  });
}

void retract_then_extend(Suite& s) {
  s.trials([&](InstanceGenerator& gen) {
    Facw m = gen.facw();
    Facaw via_retraction = gen_extend(lift_facv(retract(m)));
    Facaw direct = gen_extend(m);
    FuzzySet a = gen.fuzzy_set(m.underlying_alphabet());
    for (State p = 0; p < m.states()->size(); ++p) {
      s.expect_equal(via_retraction.transition(p, a), direct.transition(p, a), dumper(m),
                     m.states()->id(p) + ": " + render(a));
    }
  });
}

// Normal words and transition grades no lower than any overlap between two
// distinct words: delta preserving by construction.
Facw preserving_facw(InstanceGenerator& gen) {
  const auto& b = gen.bounds();
  auto sigma = InstanceGenerator::symbol_names(gen.between(1, b.max_symbols));
  // There are 11^|Σ| - 10^|Σ| normal fuzzy sets over the pool; one when |Σ| = 1.
  const std::size_t normal = saturating_pow(kPool, sigma->size()) - saturating_pow(kPool - 1, sigma->size());
  auto names = letters(gen.between(1, std::min<std::size_t>(b.max_words, normal)), 'A');
  std::vector<FuzzySet> words;
  while (words.size() < names->size()) {
    FuzzySet draw = gen.fuzzy_set(sigma);
    std::vector<Grade> g(draw.grades().begin(), draw.grades().end());
    g[gen.below(g.size())] = Grade::one();
    FuzzySet w(sigma, std::move(g));
    if (std::find(words.begin(), words.end(), w) == words.end()) words.push_back(std::move(w));
  }
  Grade overlap = Grade::zero();
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) overlap = join(overlap, height(intersection(words[i], words[j])));
  }
  Facw shape = gen.facw(sigma, names, words);
  if (overlap.is_zero()) return shape;
  std::vector<FuzzySet> rows;
  for (const auto& row : shape.machine().delta_rows()) {
    std::vector<Grade> g(row.size());
    for (auto& x : g) x = gen.grade_at_least(overlap);
    rows.emplace_back(shape.states(), std::move(g));
  }
  return with_delta(shape, std::move(rows));
}

Facw perturb(InstanceGenerator& gen, const Facw& m) {
  auto rows = delta_rows(m);
  if (rows.empty()) return m;
  FuzzySet& row = rows[gen.below(rows.size())];
  std::vector<Grade> g(row.grades().begin(), row.grades().end());
  g[gen.below(g.size())] = gen.grade();
  row = FuzzySet(row.universe(), std::move(g));
  return with_delta(m, std::move(rows));
}

void delta_preservation(Suite& s) {
  std::size_t preserving = 0;
  std::size_t not_preserving = 0;
  s.trials([&](InstanceGenerator& gen) {
    std::optional<Facw> m;
    switch (s.trial() % 4) {
      case 0: m = gen.facw(); break;
      case 1: m = lift_facv(gen.facv()); break;
      case 2: m = preserving_facw(gen); break;
      default: m = perturb(gen, preserving_facw(gen)); break;
    }
    const bool direct = is_delta_preserving(*m);
    const bool syntactic = preservation_conditions_hold(*m);
    (direct ? preserving : not_preserving)++;
    s.count();
    if (direct != syntactic) {
      s.fail(io::dump(*m), {}, direct ? "true" : "false", syntactic ? "true" : "false",
             "direct evaluation vs. syntactic conditions");
    }
  });
  if (s.config().trials >= 8 && (preserving == 0 || not_preserving == 0)) {
    s.fail({}, {}, std::to_string(preserving), std::to_string(not_preserving),
           "generator did not produce both preserving and non-preserving instances");
  }
}

// One state; the two automata fire on different words, so each retraction
// accepts "a" fully while the product accepts nothing.
std::pair<Facw, Facw> strict_product_fixture() {
  std::map<std::string, std::map<std::string, double>> words{{"A", {{"a", 1.0}}}, {"B", {{"a", 1.0}, {"b", 0.5}}}};
  Facw m1 = FacwBuilder({"s"}, {"a", "b"}, words, "s").final_grade("s", 1).transition("s", "A", "s", 1).build();
  Facw m2 = FacwBuilder({"s"}, {"a", "b"}, words, "s").final_grade("s", 1).transition("s", "B", "s", 1).build();
  return {std::move(m1), std::move(m2)};
}

void product_bound(Suite& s) {
  auto check = [&](const Facw& m1, const Facw& m2, InstanceGenerator* gen) {
    Facw p = product(m1, m2);
    Facv r1 = retract(m1), r2 = retract(m2), rp = retract(p);
    auto both = [&] { return io::dump(m1) + io::dump(m2); };
    for_each_string(m1.underlying_alphabet()->size(), s.config().max_len, [&](auto w) {
      s.expect_at_most(accept(rp, w), meet(accept(r1, w), accept(r2, w)), both,
                       render_symbols(*m1.underlying_alphabet(), w), "retraction of the product");
    });
    if (gen == nullptr) return;
    Facaw e1 = gen_extend(m1), e2 = gen_extend(m2), ep = gen_extend(p);
    auto tokens = token_pool(*gen, m1, s.config().fuzzy_tokens);
    for (int i = 0; i < 5; ++i) {
      WordString w = random_word_string(*gen, tokens, gen->between(0, s.config().max_fuzzy_len));
      s.expect_at_most(word_accept(ep, w), meet(word_accept(e1, w), word_accept(e2, w)), both, render_words(w),
                       "extension of the product");
    }
  };
  s.trials([&](InstanceGenerator& gen) {
    Facw m1 = gen.facw();
    Facw m2 = gen.facw_like(m1);
    check(m1, m2, &gen);
  });
  auto [f1, f2] = strict_product_fixture();
  // Guarantees a strict instance whenever strings of length 1 are checked.
  check(f1, f2, nullptr);
}

struct Split {
  Facw m1;
  Facw m2;
  StateMap f;
  std::optional<StateMap> g;
};

// M1 splits each state s of M2's image into 1-2 copies, one of them
// canonical. Canonical copies carry M2's grades exactly, the others carry
// smaller ones, so the projection f is a homomorphism. Without orphan
// states in M2, s ↦ canonical copy is a homomorphism back.
Split split_instance(InstanceGenerator& gen, bool orphans) {
  Facw base = gen.facw();
  const std::size_t n = base.states()->size();
  const std::size_t k = base.word_count();

  std::vector<std::string> q2_ids(base.states()->ids().begin(), base.states()->ids().end());
  const std::size_t extra = orphans ? gen.between(1, 2) : 0;
  for (std::size_t i = 0; i < extra; ++i) q2_ids.push_back("x" + std::to_string(i));
  auto q2 = Universe::make(q2_ids);  // "q*" sorts before "x*", so base indices carry over

  std::vector<FuzzySet> rows2;
  for (State p = 0; p < q2->size(); ++p) {
    for (std::size_t w = 0; w < k; ++w) {
      std::vector<Grade> g(q2->size());
      for (State r = 0; r < q2->size(); ++r) {
        g[r] = (p < n && r < n) ? base.delta(p, w)[r] : (gen.below(3) == 0 ? Grade::zero() : gen.grade());
      }
      rows2.emplace_back(q2, std::move(g));
    }
  }
  std::vector<Grade> final2(q2->size());
  for (State q = 0; q < q2->size(); ++q) final2[q] = q < n ? base.final_states()[q] : gen.grade();
  Facw m2(q2, base.underlying_alphabet(), base.word_names(), {base.words().begin(), base.words().end()},
          std::move(rows2), base.initial(), FuzzySet(q2, std::move(final2)));

  std::vector<std::size_t> copies(n), canon(n);
  std::vector<std::string> q1_ids;
  for (State s = 0; s < n; ++s) {
    copies[s] = gen.between(1, 2);
    canon[s] = gen.below(copies[s]);
    for (std::size_t j = 0; j < copies[s]; ++j) q1_ids.push_back(q2->id(s) + "." + std::to_string(j));
  }
  auto q1 = Universe::make(q1_ids);
  auto copy_index = [&](State s, std::size_t j) { return q1->index(q2->id(s) + "." + std::to_string(j)); };
  std::vector<State> owner(q1->size());
  std::vector<bool> is_canon(q1->size());
  for (State s = 0; s < n; ++s) {
    for (std::size_t j = 0; j < copies[s]; ++j) {
      owner[copy_index(s, j)] = s;
      is_canon[copy_index(s, j)] = j == canon[s];
    }
  }

  std::vector<FuzzySet> rows1;
  for (State p = 0; p < q1->size(); ++p) {
    for (std::size_t w = 0; w < k; ++w) {
      std::vector<Grade> g(q1->size());
      for (State r = 0; r < q1->size(); ++r) {
        Grade target = m2.delta(owner[p], w)[owner[r]];
        g[r] = is_canon[r] ? target : gen.grade_at_most(target);
      }
      rows1.emplace_back(q1, std::move(g));
    }
  }
  std::vector<Grade> final1(q1->size());
  for (State q = 0; q < q1->size(); ++q) {
    Grade target = m2.final_states()[owner[q]];
    final1[q] = is_canon[q] ? target : gen.grade_at_most(target);
  }
  Facw m1(q1, base.underlying_alphabet(), base.word_names(), {base.words().begin(), base.words().end()},
          std::move(rows1), copy_index(base.initial(), canon[base.initial()]), FuzzySet(q1, std::move(final1)));

  StateMap f(q1, q2, owner);
  std::optional<StateMap> g;
  if (!orphans) {
    std::vector<State> back(n);
    for (State s = 0; s < n; ++s) back[s] = copy_index(s, canon[s]);
    g.emplace(q2, q1, std::move(back));
  }
  return {std::move(m1), std::move(m2), std::move(f), std::move(g)};
}

// Raises one canonical grade of M1 above M2's, which breaks condition 2.
std::optional<Facw> break_transition(InstanceGenerator& gen, const Split& sp) {
  std::vector<std::pair<std::size_t, State>> candidates;
  const std::size_t k = sp.m1.word_count();
  const auto& rows = sp.m1.machine().delta_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (State r = 0; r < rows[i].size(); ++r) {
      if (rows[i][r] < Grade::one() && sp.m2.delta(sp.f(i / k), i % k)[sp.f(r)] == rows[i][r]) {
        candidates.emplace_back(i, r);
      }
    }
  }
  if (candidates.empty()) return std::nullopt;
  auto [i, r] = candidates[gen.below(candidates.size())];
  auto all = delta_rows(sp.m1);
  std::vector<Grade> g(all[i].grades().begin(), all[i].grades().end());
  Grade raised = g[r];
  while (raised <= g[r]) raised = gen.grade_at_least(g[r]);
  g[r] = raised;
  all[i] = FuzzySet(all[i].universe(), std::move(g));
  return with_delta(sp.m1, std::move(all));
}

// Pushes the distribution `row` over Q1 along f: s ↦ ∨{ row(r) : f(r) = s }.
FuzzySet collapse(const StateMap& f, const FuzzySet& row) {
  std::vector<Grade> out(f.target()->size());
  for (State r = 0; r < row.size(); ++r) out[f(r)] = join(out[f(r)], row[r]);
  return FuzzySet(f.target(), std::move(out));
}

// Keeps only the states in `keep`.
FuzzySet mask(const FuzzySet& row, const std::vector<State>& keep) {
  std::vector<Grade> out(row.size());
  for (State q : keep) out[q] = row[q];
  return FuzzySet(row.universe(), std::move(out));
}

void homomorphism(Suite& s) {
  s.trials([&](InstanceGenerator& gen) {
    const bool orphans = s.trial() % 2 == 0;
    Split sp = split_instance(gen, orphans);
    const Facw& m1 = sp.m1;
    const Facw& m2 = sp.m2;
    auto both = [&] { return io::dump(m1) + io::dump(m2); };
    auto hom = [&](const HomomorphismCheck& c, const char* what) {
      s.expect(c.holds, both, std::string(what) + ": " + c.detail);
    };

    hom(check_homomorphism(sp.f, m1, m2), "f : M1 -> M2");
    if (sp.g) hom(check_homomorphism(*sp.g, m2, m1), "g : M2 -> M1");

    if (auto broken = break_transition(gen, sp)) {
      auto c = check_homomorphism(sp.f, *broken, m2);
      s.expect(!c.holds && c.violated == 2, [&] { return io::dump(*broken) + io::dump(m2); },
               "raised transition grade not detected");
    }

    // Retractions.
    Facv r1 = retract(m1), r2 = retract(m2);
    hom(check_homomorphism(sp.f, r1, r2), "f on the retractions");
    s.expect_equal(hom_image(sp.f, r1, r2), retract(hom_image(sp.f, m1, m2)), both, {},
                   "image of the retraction vs. retraction of the image");

    // Extensions, compared pointwise on sampled inputs.
    Facaw e1 = gen_extend(m1), e2 = gen_extend(m2);
    Facw image = hom_image(sp.f, m1, m2);
    Facaw ei = gen_extend(image);
    const auto range = sp.f.range();
    auto tokens = token_pool(gen, m1, s.config().fuzzy_tokens);
    for (int i = 0; i < 3; ++i) {
      const FuzzySet& a = tokens[gen.below(tokens.size())];
      for (State p = 0; p < m1.states()->size(); ++p) {
        s.expect_equal(collapse(sp.f, e1.transition(p, a)), mask(e2.transition(sp.f(p), a), range), both,
                       m1.states()->id(p) + ": " + render(a), "f on the extensions");
      }
      for (State q : range) {
        State local = image.states()->index(m2.states()->id(q));
        FuzzySet lifted = ei.transition(local, a);
        FuzzySet restricted = e2.transition(q, a);
        for (State t = 0; t < image.states()->size(); ++t) {
          State outer = m2.states()->index(image.states()->id(t));
          s.expect_equal(lifted[t], restricted[outer], both,
                         m2.states()->id(q) + " -> " + m2.states()->id(outer) + ": " + render(a),
                         "extension of the image vs. image of the extension");
        }
      }
    }

    // Languages: inclusion along f, equality when maps go both ways.
    auto compare = [&](Grade l1, Grade l2, const std::string& input, const char* what) {
      if (sp.g) {
        s.expect_equal(l1, l2, both, input, what);
      } else {
        s.expect_at_most(l1, l2, both, input, what);
      }
    };
    for_each_string(m1.word_count(), s.config().max_len, [&](auto w) {
      compare(accept(m1, w), accept(m2, w), render_symbols(*m1.word_names(), w), "word language");
    });
    for_each_string(m1.underlying_alphabet()->size(), s.config().max_len, [&](auto w) {
      compare(accept(r1, w), accept(r2, w), render_symbols(*m1.underlying_alphabet(), w), "retraction language");
    });
    for (int i = 0; i < 5; ++i) {
      WordString w = random_word_string(gen, tokens, gen.between(0, s.config().max_fuzzy_len));
      compare(word_accept(e1, w), word_accept(e2, w), render_words(w), "extension language");
    }
  });
}

void product_language(Suite& s) {
  s.trials([&](InstanceGenerator& gen) {
    Facv v1 = gen.facv();
    Facv v2 = gen.facv(v1.alphabet());
    Facv p = product(v1, v2);
    auto both = [&] { return io::dump(v1) + io::dump(v2); };
    for_each_string(v1.alphabet()->size(), s.config().max_len, [&](auto w) {
      s.expect_equal(accept(p, w), meet(accept(v1, w), accept(v2, w)), both, render_symbols(*v1.alphabet(), w));
    });
  });
}

void lift_roundtrip(Suite& s) {
  s.trials([&](InstanceGenerator& gen) {
    Facv v = gen.facv();
    Facv back = retract(lift_facv(v));
    s.count();
    if (!(back == v)) s.fail(io::dump(v), {}, io::dump(back), io::dump(v), "retract(lift(M)) differs from M");
  });
}

struct SuiteEntry {
  std::string_view name;
  void (*run)(Suite&);
};

constexpr std::array<SuiteEntry, 11> kSuites{{
    {"retraction-principle", retraction_principle},
    {"extension-principle", extension_principle},
    {"retraction-closed-form", retraction_closed_form},
    {"extension-closed-form", extension_closed_form},
    {"singleton-extension", singleton_extension},
    {"retract-then-extend", retract_then_extend},
    {"delta-preservation", delta_preservation},
    {"product-bound", product_bound},
    {"homomorphism", homomorphism},
    {"product-language", product_language},
    {"lift-roundtrip", lift_roundtrip},
}};

const std::array<std::string_view, kSuites.size()> kSuiteNames = [] {
  std::array<std::string_view, kSuites.size()> out{};
  for (std::size_t i = 0; i < kSuites.size(); ++i) out[i] = kSuites[i].name;
  return out;
}();

}  // namespace

std::span<const std::string_view> suite_names() { return kSuiteNames; }

CheckReport run_suite(std::string_view suite, const CheckConfig& config) {
  auto it = std::find_if(kSuites.begin(), kSuites.end(), [&](const SuiteEntry& e) { return e.name == suite; });
  if (it == kSuites.end()) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
  CheckReport report;
  report.suite = std::string(suite);
  Suite s(config, report);
  const auto start = std::chrono::steady_clock::now();
  try {
    it->run(s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    report.complete = false;
    report.failures.push_back({s.trial(), {}, {}, {}, {}, e.what()});
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (suite == "product-bound" && report.complete && report.strict == 0 && config.max_len > 0) {
    ++report.failed;
    report.failures.push_back({0, {}, {}, {}, {}, "no instance where the bound is strict"});
  }
  return report;
}

std::vector<CheckReport> run_checks(const CheckConfig& config) {
  std::vector<std::string_view> selected;
  for (const auto& name : config.suites) {
    if (name == "all") {
      selected.assign(kSuiteNames.begin(), kSuiteNames.end());
      break;
    }
    if (std::find(kSuiteNames.begin(), kSuiteNames.end(), name) == kSuiteNames.end()) {
      throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
    }
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) selected.push_back(name);
  }
  std::vector<CheckReport> out;
  for (auto name : selected) out.push_back(run_suite(name, config));
  return out;
}

std::string report_json(std::span<const CheckReport> reports, const CheckConfig& config, bool timing) {
  using nlohmann::json;
  json suites = json::array();
  bool passed = true;
  for (const auto& r : reports) {
    json failures = json::array();
    for (const auto& f : r.failures) {
      failures.push_back({{"trial", f.trial},
                          {"automaton", f.automaton},
                          {"input", f.input},
                          {"lhs", f.lhs},
                          {"rhs", f.rhs},
                          {"detail", f.detail}});
    }
    json entry = {{"suite", r.suite},     {"instances", r.instances}, {"strict", r.strict},
                  {"failed", r.failed},   {"complete", r.complete},   {"passed", r.passed()},
                  {"failures", failures}};
    if (timing) entry["elapsed_ms"] = r.elapsed_ms;
    suites.push_back(std::move(entry));
    passed = passed && r.passed();
  }
  json cfg = {{"seed", config.seed},
              {"trials", config.trials},
              {"max_q", config.bounds.max_states},
              {"max_sigma", config.bounds.max_symbols},
              {"max_words", config.bounds.max_words},
              {"max_len", config.max_len},
              {"max_fuzzy_len", config.max_fuzzy_len},
              {"fuzzy_tokens", config.fuzzy_tokens},
              {"budget", config.budget}};
  json doc = {{"format", std::string(io::kFormat)},
              {"kind", "check_report"},
              {"passed", passed},
              {"config", cfg},
              {"suites", suites}};
  return doc.dump(2) + "\n";
}

std::string report_table(std::span<const CheckReport> reports) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-24s %10s %8s %8s  %s\n", "suite", "instances", "strict", "failed", "status");
  out << line;
  for (const auto& r : reports) {
    const char* status = r.passed() ? "pass" : (r.complete ? "FAIL" : "incomplete");
    std::snprintf(line, sizeof line, "%-24s %10zu %8zu %8zu  %s\n", r.suite.c_str(), r.instances, r.strict, r.failed,
                  status);
    out << line;
    for (const auto& f : r.failures) {
      out << "  trial " << f.trial;
      if (!f.input.empty()) out << " input " << f.input;
      if (!f.lhs.empty() || !f.rhs.empty()) out << ": " << f.lhs << " vs " << f.rhs;
      if (!f.detail.empty()) out << " (" << f.detail << ")";
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace fwa::verify
