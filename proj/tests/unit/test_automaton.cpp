#include <doctest.h>

#include <set>

#include "fwa/automaton.hpp"
#include "fwa/transforms.hpp"
#include "oracle.hpp"

using namespace fwa;

namespace {

FuzzySet on(const UniversePtr& q, const std::map<std::string, double>& m) { return FuzzySet::from_map(q, m); }

SymbolString words_of(const Facw& m, std::string_view text) { return parse_tokens(*m.word_names(), text); }

}  // namespace

TEST_CASE("empty input leaves the start state") {
  auto m = oracle::example1();
  for (State p = 0; p < 3; ++p) CHECK(extended_delta(m, p, SymbolString{}) == FuzzySet::singleton(m.states(), p));
}

TEST_CASE("example word transitions from q0") {
  auto m = oracle::example1();
  const auto& q = m.states();
  CHECK(extended_delta(m, 0, words_of(m, "S")) == on(q, {{"q0", 1}}));
  CHECK(extended_delta(m, 0, words_of(m, "M")) == on(q, {{"q1", 0.9}}));
  CHECK(extended_delta(m, 0, words_of(m, "L")) == on(q, {{"q1", 0.3}, {"q2", 0.7}}));
}

TEST_CASE("example acceptance degrees") {
  auto m = oracle::example1();
  CHECK(accept(m, words_of(m, "")) == Grade(0.1));
  CHECK(accept(m, words_of(m, "S")) == Grade(0.1));
  CHECK(accept(m, words_of(m, "M")) == Grade(0.9));
}

TEST_CASE("unknown tokens are named") {
  auto m = oracle::example1();
  try {
    words_of(m, "S Q M");
    FAIL("expected an unknown token");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownId);
    CHECK(std::string(e.what()).find("'Q'") != std::string::npos);
  }
  CHECK(words_of(m, "  S\tL  ").size() == 2);
}

TEST_CASE("completeness") {
  CHECK(is_complete(oracle::example1()));
  auto partial = FacwBuilder({"q"}, {"1", "2"}, {{"A", {{"1", 0.5}}}}, "q").build();
  CHECK_FALSE(is_complete(partial));
  auto none = FacwBuilder({"q"}, {"1", "2"}, {}, "q").build();
  CHECK_FALSE(is_complete(none));
}

TEST_CASE("lifting a crisp automaton") {
  auto v = FacvBuilder({"q"}, {"a"}, "q").transition("q", "a", "q", 0.4).build();
  auto w = lift_facv(v);
  REQUIRE(w.word_count() == 1);
  CHECK(w.word(0) == on(w.underlying_alphabet(), {{"a", 1}}));
  CHECK(w.delta(0, 0) == on(w.states(), {{"q", 0.4}}));
  CHECK(retract(w) == v);

  oracle::Random rnd(21);
  for (int i = 0; i < 50; ++i) {
    auto m = rnd.facv();
    auto lifted = lift_facv(m);
    CHECK(lifted.word_count() == m.alphabet()->size());
    CHECK(lifted.initial() == m.initial());
    CHECK(lifted.final_states() == m.final_states());
  }
}

TEST_CASE("construction rejects malformed automata") {
  auto q = Universe::make({"p"});
  auto a = Universe::make({"a"});
  auto other = Universe::make({"x", "y"});
  CHECK_THROWS_AS(Facv(q, a, {FuzzySet(q)}, 3, FuzzySet(q)), Error);
  CHECK_THROWS_AS(Facv(q, a, {}, 0, FuzzySet(q)), Error);
  CHECK_THROWS_AS(Facv(q, a, {FuzzySet(other)}, 0, FuzzySet(q)), Error);
  CHECK_THROWS_AS(Facv(q, a, {FuzzySet(q)}, 0, FuzzySet(other)), Error);
  // Two names for the same fuzzy set.
  CHECK_THROWS_AS(FacwBuilder({"p"}, {"1"}, {{"A", {{"1", 0.5}}}, {"B", {{"1", 0.5}}}}, "p").build(), Error);
  CHECK_THROWS_AS(FacvBuilder({"p"}, {"a"}, "z"), Error);
  CHECK_THROWS_AS(FacvBuilder({"p"}, {"a"}, "p").transition("p", "b", "p", 0.5), Error);
  CHECK_THROWS_AS(FacvBuilder({"p"}, {"a"}, "p").transition("p", "a", "p", 1.5), Error);
}

TEST_CASE("builder order does not matter") {
  auto one = FacvBuilder({"b", "a"}, {"y", "x"}, "a")
                 .transition("a", "x", "b", 0.5)
                 .transition("b", "y", "a", 0.25)
                 .final_grade("b", 1)
                 .build();
  auto two = FacvBuilder({"a", "b"}, {"x", "y"}, "a")
                 .final_grade("b", 1)
                 .transition("b", "y", "a", 0.25)
                 .transition("a", "x", "b", 0.5)
                 .build();
  CHECK(one == two);
}

// Property tests against path enumeration.

TEST_CASE("acceptance equals the best path") {
  oracle::Random rnd(22);
  for (int i = 0; i < 100; ++i) {
    auto m = rnd.facv();
    for (const auto& w : oracle::all_strings(m.alphabet()->size(), 3)) {
      CHECK(accept(m, w).value() == oracle::path_accept(m, w));
    }
  }
}

TEST_CASE("extended transitions compose over concatenation") {
  oracle::Random rnd(23);
  for (int i = 0; i < 60; ++i) {
    auto m = rnd.facv();
    const auto strings = oracle::all_strings(m.alphabet()->size(), 2);
    for (const auto& u : strings) {
      for (const auto& v : strings) {
        SymbolString uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        for (State p = 0; p < m.states()->size(); ++p) {
          auto left = extended_delta(m, p, u);
          std::vector<Grade> composed(m.states()->size());
          for (State r = 0; r < composed.size(); ++r) {
            auto right = extended_delta(m, r, v);
            for (State q = 0; q < composed.size(); ++q) composed[q] = join(composed[q], meet(left[r], right[q]));
          }
          CHECK(extended_delta(m, p, uv) == FuzzySet(m.states(), composed));
        }
      }
    }
  }
}

TEST_CASE("acceptance is bounded by the final height and creates no grades") {
  oracle::Random rnd(24);
  for (int i = 0; i < 100; ++i) {
    auto m = rnd.facv();
    std::set<double> stored{0.0, 1.0};
    for (const auto& row : m.delta_rows()) {
      for (auto g : row.grades()) stored.insert(g.value());
    }
    for (const auto& w : oracle::all_strings(m.alphabet()->size(), 3)) {
      CHECK(accept(m, w) <= height(m.final_states()));
      auto reached = extended_delta(m, m.initial(), w);
      for (auto g : reached.grades()) CHECK(stored.count(g.value()) == 1);
    }
  }
}

TEST_CASE("word acceptance uses the word-name machine") {
  oracle::Random rnd(25);
  for (int i = 0; i < 50; ++i) {
    auto m = rnd.facw();
    for (const auto& w : oracle::all_strings(m.word_count(), 3)) {
      CHECK(accept(m, w).value() == oracle::path_accept(m, w));
    }
  }
}
