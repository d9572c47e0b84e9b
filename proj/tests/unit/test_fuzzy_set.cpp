#include <doctest.h>

#include <cmath>
#include <set>

#include "fwa/fuzzy_set.hpp"
#include "oracle.hpp"

using namespace fwa;

namespace {

UniversePtr sigma5() { return Universe::make({"1", "2", "3", "4", "5"}); }

FuzzySet set_of(const UniversePtr& u, const std::map<std::string, double>& m) { return FuzzySet::from_map(u, m); }

FuzzySet word_S(const UniversePtr& u) { return set_of(u, {{"1", 1}, {"2", 0.5}, {"3", 0.1}}); }
FuzzySet word_M(const UniversePtr& u) { return set_of(u, {{"2", 0.2}, {"3", 1}, {"4", 0.2}}); }
FuzzySet word_L(const UniversePtr& u) { return set_of(u, {{"3", 0.1}, {"4", 0.5}, {"5", 1}}); }

}  // namespace

TEST_CASE("grades reject values outside the unit interval") {
  CHECK_NOTHROW(Grade(0.0));
  CHECK_NOTHROW(Grade(1.0));
  CHECK_THROWS_AS(Grade(1.5), Error);
  CHECK_THROWS_AS(Grade(-0.1), Error);
  CHECK_THROWS_AS(Grade(std::nan("")), Error);
  try {
    Grade(1.5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GradeRange);
  }
  CHECK(meet(Grade(0.3), Grade(0.7)) == Grade(0.3));
  CHECK(join(Grade(0.3), Grade(0.7)) == Grade(0.7));
}

TEST_CASE("universe ordering and lookup") {
  auto a = Universe::make({"b", "a", "c"});
  auto b = Universe::make({"c", "b", "a"});
  CHECK(*a == *b);
  CHECK(a->id(0) == "a");
  CHECK(a->index("c") == 2);
  CHECK_FALSE(a->find("z").has_value());
  CHECK_THROWS_AS(a->index("z"), Error);
  CHECK_THROWS_AS(Universe::make({"a", "a"}), Error);
  auto empty = Universe::make({});
  CHECK(empty->empty());
}

TEST_CASE("union") {
  auto u = Universe::make({"a"});
  CHECK(set_union(set_of(u, {{"a", 0.3}}), set_of(u, {{"a", 0.7}})) == set_of(u, {{"a", 0.7}}));
  auto s = sigma5();
  CHECK(set_union(word_S(s), FuzzySet(s)) == word_S(s));
  auto x = Universe::make({"1", "2", "3"});
  CHECK(set_union(set_of(x, {{"1", 1}, {"2", 0.5}}), set_of(x, {{"2", 0.2}, {"3", 1}})) ==
        set_of(x, {{"1", 1}, {"2", 0.5}, {"3", 1}}));
  CHECK_THROWS_AS(set_union(FuzzySet(u), FuzzySet(x)), Error);
}

TEST_CASE("intersection") {
  auto s = sigma5();
  CHECK(intersection(word_S(s), FuzzySet(s)).empty());
  auto u = Universe::make({"a"});
  CHECK(intersection(set_of(u, {{"a", 0.3}}), set_of(u, {{"a", 0.7}})) == set_of(u, {{"a", 0.3}}));
  CHECK(intersection(word_S(s), word_M(s)) == set_of(s, {{"2", 0.2}, {"3", 0.1}}));
  try {
    intersection(FuzzySet(u), FuzzySet(s));
    FAIL("expected a universe mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UniverseMismatch);
  }
}

TEST_CASE("scale product") {
  auto s = sigma5();
  CHECK(scale_product(Grade::one(), word_S(s)) == word_S(s));
  CHECK(scale_product(Grade::zero(), word_S(s)).empty());
  auto x = Universe::make({"1", "2"});
  CHECK(scale_product(Grade(0.5), set_of(x, {{"1", 1}, {"2", 0.3}})) == set_of(x, {{"1", 0.5}, {"2", 0.3}}));
}

TEST_CASE("height and support") {
  auto s = sigma5();
  CHECK(height(FuzzySet(s)) == Grade::zero());
  CHECK(height(FuzzySet::singleton(s, 2)) == Grade::one());
  CHECK(height(word_S(s)) == Grade::one());
  CHECK(support(FuzzySet(s)).empty());
  CHECK(support(word_S(s)) == std::vector<std::string>{"1", "2", "3"});
  CHECK(support(scale_product(Grade::zero(), word_S(s))).empty());
}

TEST_CASE("zadeh image") {
  auto s = sigma5();
  std::map<std::string, std::string> id;
  for (const auto& x : s->ids()) id[x] = x;
  CHECK(zadeh_image(id, word_S(s), s) == word_S(s));

  auto c = Universe::make({"c"});
  std::map<std::string, std::string> constant;
  for (const auto& x : s->ids()) constant[x] = "c";
  CHECK(zadeh_image(constant, word_S(s), c) == set_of(c, {{"c", 1}}));

  auto x = Universe::make({"1", "2", "3"});
  auto y = Universe::make({"a", "b"});
  CHECK(zadeh_image({{"1", "a"}, {"2", "a"}, {"3", "b"}}, set_of(x, {{"1", 0.4}, {"2", 0.9}, {"3", 0.2}}), y) ==
        set_of(y, {{"a", 0.9}, {"b", 0.2}}));
  CHECK_THROWS_AS(zadeh_image({{"1", "a"}}, set_of(x, {{"1", 0.4}}), y), Error);
}

TEST_CASE("fuzzy description") {
  auto s = sigma5();
  auto names = Universe::make({"L", "M", "S"});
  std::vector<FuzzySet> meanings{word_L(s), word_M(s), word_S(s)};
  CHECK(fuzzy_description(names, meanings, FuzzySet(s)).empty());

  const double r = std::sqrt(0.1);
  auto s_prime = set_of(s, {{"1", 1}, {"2", std::sqrt(0.5)}, {"3", r}});
  auto d = fuzzy_description(names, meanings, s_prime);
  CHECK(d.at("S") == Grade::one());
  CHECK(d.at("M") == Grade(r));
  CHECK(d.at("L") == Grade(0.1));
  CHECK(std::fabs(d.at("M").value() - 0.3162) < 1e-4);

  auto just_s = Universe::make({"S"});
  std::vector<FuzzySet> one{word_S(s)};
  CHECK(fuzzy_description(just_s, one, word_S(s)) == set_of(just_s, {{"S", 1}}));
}

TEST_CASE("approximate comparison exists only for printed values") {
  auto u = Universe::make({"a"});
  CHECK(approx_equal(set_of(u, {{"a", std::sqrt(0.1)}}), set_of(u, {{"a", 0.3162}}), 1e-4));
  CHECK_FALSE(approx_equal(set_of(u, {{"a", std::sqrt(0.1)}}), set_of(u, {{"a", 0.3162}})));
}

TEST_CASE("empty universe degenerates") {
  auto e = Universe::make({});
  FuzzySet a(e);
  CHECK(height(a) == Grade::zero());
  CHECK(set_union(a, a) == a);
  CHECK(support(a).empty());
}

TEST_CASE("from_map rejects unknown ids and bad grades") {
  auto u = Universe::make({"a"});
  CHECK_THROWS_AS(set_of(u, {{"b", 0.5}}), Error);
  CHECK_THROWS_AS(set_of(u, {{"a", 2.0}}), Error);
}

// Property tests over random sets on a shared universe.

TEST_CASE("lattice laws hold pointwise") {
  oracle::Random rnd(11);
  auto u = Universe::make({"a", "b", "c", "d"});
  for (int i = 0; i < 300; ++i) {
    auto a = rnd.set(u), b = rnd.set(u), c = rnd.set(u);
    CHECK(set_union(a, b) == set_union(b, a));
    CHECK(intersection(a, b) == intersection(b, a));
    CHECK(set_union(a, set_union(b, c)) == set_union(set_union(a, b), c));
    CHECK(intersection(a, intersection(b, c)) == intersection(intersection(a, b), c));
    CHECK(set_union(a, a) == a);
    CHECK(intersection(a, a) == a);
    CHECK(set_union(a, intersection(a, b)) == a);
    CHECK(intersection(a, set_union(a, b)) == a);
    CHECK(intersection(a, set_union(b, c)) == set_union(intersection(a, b), intersection(a, c)));
  }
}

TEST_CASE("operations never create new grades") {
  oracle::Random rnd(12);
  auto u = Universe::make({"a", "b", "c"});
  for (int i = 0; i < 200; ++i) {
    auto a = rnd.set(u), b = rnd.set(u);
    Grade lambda(rnd.grade());
    std::set<double> inputs{0.0, lambda.value()};
    for (auto g : a.grades()) inputs.insert(g.value());
    for (auto g : b.grades()) inputs.insert(g.value());
    for (const auto& out : {set_union(a, b), intersection(a, b), scale_product(lambda, a)}) {
      for (auto g : out.grades()) CHECK(inputs.count(g.value()) == 1);
    }
    CHECK(inputs.count(height(a).value()) == 1);
  }
}

TEST_CASE("monotonicity and scale bounds") {
  oracle::Random rnd(13);
  auto u = Universe::make({"a", "b", "c"});
  for (int i = 0; i < 200; ++i) {
    auto a = rnd.set(u), b = rnd.set(u), c = rnd.set(u);
    auto small = intersection(a, b);  // small ⊆ a
    CHECK(small.subset_of(a));
    CHECK(height(small) <= height(a));
    CHECK(set_union(small, c).subset_of(set_union(a, c)));
    CHECK(intersection(small, c).subset_of(intersection(a, c)));
    Grade lambda(rnd.grade());
    CHECK(scale_product(lambda, a).subset_of(a));
    CHECK(height(scale_product(lambda, a)) == meet(lambda, height(a)));
  }
}

TEST_CASE("description of a crisp element reads off the meanings") {
  oracle::Random rnd(14);
  auto x = Universe::make({"1", "2", "3"});
  auto names = Universe::make({"A", "B"});
  for (int i = 0; i < 100; ++i) {
    std::vector<FuzzySet> meanings{rnd.set(x), rnd.set(x)};
    for (std::size_t e = 0; e < x->size(); ++e) {
      auto d = fuzzy_description(names, meanings, FuzzySet::singleton(x, e));
      CHECK(d[0] == meanings[0][e]);
      CHECK(d[1] == meanings[1][e]);
    }
  }
}

TEST_CASE("support is exactly the positive grades") {
  oracle::Random rnd(15);
  auto u = Universe::make({"a", "b", "c", "d"});
  for (int i = 0; i < 100; ++i) {
    auto a = rnd.set(u);
    auto supp = support(a);
    for (std::size_t e = 0; e < u->size(); ++e) {
      bool listed = std::find(supp.begin(), supp.end(), u->id(e)) != supp.end();
      CHECK(listed == !a[e].is_zero());
    }
    CHECK(a.to_map().size() == supp.size());
  }
}
