#include <doctest.h>

#include <cstring>
#include <string>

#include "fwa/fwa.h"

namespace {

std::string data(const char* name) { return std::string(FWA_TEST_DATA) + "/" + name; }

// Owns a C string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  fwa_string_free(s);
  return out;
}

struct Handle {
  fwa_automaton* m = nullptr;
  Handle() = default;
  Handle(Handle&& other) noexcept : m(other.m) { other.m = nullptr; }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { fwa_free(m); }
};

Handle load(const char* name) {
  Handle h;
  REQUIRE(fwa_load_file(data(name).c_str(), &h.m) == FWA_OK);
  return h;
}

}  // namespace

TEST_CASE("load, inspect and dump") {
  Handle h = load("example1.json");
  fwa_kind kind{};
  REQUIRE(fwa_kind_of(h.m, &kind) == FWA_OK);
  CHECK(kind == FWA_KIND_FACW);
  char* text = nullptr;
  REQUIRE(fwa_dump(h.m, &text) == FWA_OK);
  auto dumped = take(text);
  CHECK(dumped.find("\"kind\": \"facw\"") != std::string::npos);

  Handle again;
  REQUIRE(fwa_load_string(dumped.c_str(), &again.m) == FWA_OK);
  REQUIRE(fwa_dump(again.m, &text) == FWA_OK);
  CHECK(take(text) == dumped);
  CHECK(std::strlen(fwa_version()) > 0);
}

TEST_CASE("acceptance through the C interface") {
  Handle h = load("example1.json");
  double g = -1;
  REQUIRE(fwa_accept(h.m, "", &g) == FWA_OK);
  CHECK(g == 0.1);
  REQUIRE(fwa_accept(h.m, "S", &g) == FWA_OK);
  CHECK(g == 0.1);
  const char* words[] = {"S"};
  REQUIRE(fwa_accept_words(h.m, words, 1, &g) == FWA_OK);
  CHECK(g == 0.2);
  const char* prime[] = {R"({"format": "fwa/1", "kind": "word", "grades": {"1": 1, "2": 0.7071067811865476,
                           "3": 0.31622776601683794}})"};
  REQUIRE(fwa_accept_words(h.m, prime, 1, &g) == FWA_OK);
  CHECK(g == 0.31622776601683794);

  g = -1;
  CHECK(fwa_accept(h.m, "S X", &g) == FWA_ERR_UNKNOWN_ID);
  CHECK(g == -1);
  CHECK(std::string(fwa_last_error()).find("'X'") != std::string::npos);
}

TEST_CASE("transforms through the C interface") {
  Handle h = load("example1.json");
  Handle r;
  REQUIRE(fwa_retract(h.m, &r.m) == FWA_OK);
  double g = 0;
  REQUIRE(fwa_accept(r.m, "3", &g) == FWA_OK);
  CHECK(g == 0.9);
  CHECK(fwa_retract(r.m, nullptr) == FWA_ERR_INVALID_ARGUMENT);
  Handle again;
  CHECK(fwa_retract(r.m, &again.m) == FWA_ERR_INVALID_ARGUMENT);
  CHECK(std::string(fwa_last_error()).find("expects a facw") != std::string::npos);

  char* out = nullptr;
  REQUIRE(fwa_extend_eval(h.m, "q0", R"({"format": "fwa/1", "kind": "word", "grades": {"1": 1, "2": 0.5, "3": 0.1}})",
                          &out) == FWA_OK);
  CHECK(take(out) == R"({"q0":1,"q1":0.2,"q2":0.1})");

  REQUIRE(fwa_independence(h.m, 1, 1000, &out) == FWA_OK);
  auto report = take(out);
  CHECK(report.find("\"bound\":0.1") != std::string::npos);
  CHECK(report.find("\"witness\":[\"S\"]") != std::string::npos);
  CHECK(fwa_independence(h.m, 5, 10, &out) == FWA_ERR_BUDGET_EXCEEDED);

  int direct = -1, syntactic = -1, complete = -1;
  REQUIRE(fwa_delta_preserving(h.m, &direct, &syntactic) == FWA_OK);
  CHECK(direct == 0);
  CHECK(syntactic == 0);
  REQUIRE(fwa_is_complete(h.m, &complete) == FWA_OK);
  CHECK(complete == 1);

  Handle small = load("small_facv.json");
  Handle lifted;
  REQUIRE(fwa_lift(small.m, &lifted.m) == FWA_OK);
  REQUIRE(fwa_delta_preserving(lifted.m, &direct, &syntactic) == FWA_OK);
  CHECK(direct == 1);
  CHECK(syntactic == 1);
}

TEST_CASE("algebra through the C interface") {
  Handle source = load("merge_source.json");
  Handle target = load("merge_target.json");
  const char* good = R"({"format": "fwa/1", "kind": "state_map", "map": {"r0a": "r0", "r1a": "r1", "r1b": "r1"}})";
  const char* bad = R"({"format": "fwa/1", "kind": "state_map", "map": {"r0a": "r0", "r1a": "r1", "r1b": "r0"}})";
  int holds = -1, violated = -1;
  char* detail = nullptr;
  REQUIRE(fwa_hom_check(source.m, target.m, good, &holds, &violated, nullptr) == FWA_OK);
  CHECK(holds == 1);
  CHECK(violated == 0);
  REQUIRE(fwa_hom_check(source.m, target.m, bad, &holds, &violated, &detail) == FWA_OK);
  CHECK(holds == 0);
  CHECK(violated == 2);
  CHECK_FALSE(take(detail).empty());

  Handle image;
  REQUIRE(fwa_hom_image(source.m, target.m, good, &image.m) == FWA_OK);
  int sub = -1;
  REQUIRE(fwa_is_subautomaton(image.m, target.m, &sub) == FWA_OK);
  CHECK(sub == 1);
  Handle none;
  CHECK(fwa_hom_image(source.m, target.m, bad, &none.m) == FWA_ERR_NOT_HOMOMORPHISM);
  CHECK(none.m == nullptr);

  Handle prod;
  REQUIRE(fwa_product(source.m, target.m, &prod.m) == FWA_OK);
  Handle w = load("example1.json");
  Handle mixed;
  CHECK(fwa_product(source.m, w.m, &mixed.m) == FWA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("load errors map onto status codes") {
  Handle h;
  CHECK(fwa_load_file(data("missing.json").c_str(), &h.m) == FWA_ERR_IO);
  CHECK(fwa_load_file(data("bad_grade.json").c_str(), &h.m) == FWA_ERR_GRADE_RANGE);
  CHECK(std::string(fwa_last_error()).find("grade 1.5 is outside") != std::string::npos);
  CHECK(fwa_load_string("{ nope", &h.m) == FWA_ERR_PARSE);
  CHECK(fwa_load_string(R"({"format": "fwa/1", "kind": "dfa"})", &h.m) == FWA_ERR_SCHEMA);
  CHECK(fwa_load_string(nullptr, &h.m) == FWA_ERR_INVALID_ARGUMENT);
  CHECK(h.m == nullptr);
  CHECK(std::strcmp(fwa_status_string(FWA_OK), fwa_status_string(FWA_ERR_PARSE)) != 0);
}

TEST_CASE("property checks through the C interface") {
  int passed = -1;
  char* report = nullptr;
  char* table = nullptr;
  REQUIRE(fwa_check(R"({"suites": ["retraction-principle", "lift-roundtrip"], "trials": 5, "seed": 3})", &passed,
                    &report, &table) == FWA_OK);
  CHECK(passed == 1);
  CHECK(take(report).find("\"passed\": true") != std::string::npos);
  CHECK(take(table).find("lift-roundtrip") != std::string::npos);

  CHECK(fwa_check(R"({"suites": ["nope"]})", &passed, nullptr, nullptr) == FWA_ERR_INVALID_ARGUMENT);
  CHECK(fwa_check(R"({"trails": 5})", &passed, nullptr, nullptr) == FWA_ERR_INVALID_ARGUMENT);
  CHECK(fwa_check(R"({"max_q": 0})", &passed, nullptr, nullptr) == FWA_ERR_INVALID_ARGUMENT);

  char* names = nullptr;
  REQUIRE(fwa_check_suites(&names) == FWA_OK);
  auto list = take(names);
  CHECK(list.rfind("retraction-principle\n", 0) == 0);
}

TEST_CASE("grade formatting") {
  char* out = nullptr;
  REQUIRE(fwa_format_grade(0.31622776601683794, 4, &out) == FWA_OK);
  CHECK(take(out) == "0.3162");
  REQUIRE(fwa_format_grade(0.5, 3, &out) == FWA_OK);
  CHECK(take(out) == "0.5");
  REQUIRE(fwa_format_grade(1.0, 2, &out) == FWA_OK);
  CHECK(take(out) == "1");
  REQUIRE(fwa_format_grade(0.0, -1, &out) == FWA_OK);
  CHECK(take(out) == "0");
  REQUIRE(fwa_format_grade(0.31622776601683794, -1, &out) == FWA_OK);
  CHECK(take(out) == "0.31622776601683794");
}
