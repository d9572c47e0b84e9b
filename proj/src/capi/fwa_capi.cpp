#include "fwa/fwa.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "fwa/io.hpp"
#include "fwa/transforms.hpp"
#include "fwa/verify.hpp"

struct fwa_automaton {
  fwa::io::Automaton value;
};

namespace {

using fwa::Error;
using fwa::ErrorCode;
using nlohmann::json;

thread_local std::string last_error;

fwa_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return FWA_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return FWA_ERR_PARSE;
    case ErrorCode::Schema: return FWA_ERR_SCHEMA;
    case ErrorCode::GradeRange: return FWA_ERR_GRADE_RANGE;
    case ErrorCode::UnknownId: return FWA_ERR_UNKNOWN_ID;
    case ErrorCode::UniverseMismatch: return FWA_ERR_UNIVERSE_MISMATCH;
    case ErrorCode::AlphabetMismatch: return FWA_ERR_ALPHABET_MISMATCH;
    case ErrorCode::NotHomomorphism: return FWA_ERR_NOT_HOMOMORPHISM;
    case ErrorCode::BudgetExceeded: return FWA_ERR_BUDGET_EXCEEDED;
    case ErrorCode::Io: return FWA_ERR_IO;
  }
  return FWA_ERR_INTERNAL;
}

template <class F>
fwa_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return FWA_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    last_error = e.what();
    return FWA_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FWA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FWA_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return FWA_ERR_INTERNAL;
  }
}

template <class... Ptrs>
void require(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw Error(ErrorCode::InvalidArgument, "null argument");
}

char* copy_out(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fwa_automaton* wrap(fwa::io::Automaton m) { return new fwa_automaton{std::move(m)}; }

const fwa::Facw& as_facw(const fwa_automaton* m, const char* op) {
  if (auto* w = std::get_if<fwa::Facw>(&m->value)) return *w;
  throw Error(ErrorCode::InvalidArgument, std::string(op) + " expects a facw automaton");
}

const fwa::Facv& as_facv(const fwa_automaton* m, const char* op) {
  if (auto* v = std::get_if<fwa::Facv>(&m->value)) return *v;
  throw Error(ErrorCode::InvalidArgument, std::string(op) + " expects a facv automaton");
}

void require_same_kind(const fwa_automaton* a, const fwa_automaton* b) {
  if (a->value.index() != b->value.index()) {
    throw Error(ErrorCode::InvalidArgument, "automata are of different kinds (facv and facw)");
  }
}

const fwa::UniversePtr& states_of(const fwa_automaton* m) {
  return std::visit([](const auto& a) -> const fwa::UniversePtr& { return a.states(); }, m->value);
}

fwa::Facaw extension_of(const fwa_automaton* m) {
  if (auto* w = std::get_if<fwa::Facw>(&m->value)) return fwa::gen_extend(*w);
  return fwa::extend_facv(std::get<fwa::Facv>(m->value));
}

// A word document, or the name of an input of `m` standing for its meaning.
fwa::FuzzySet resolve_word(const fwa_automaton* m, const fwa::Facaw& e, const char* token) {
  std::string_view t(token);
  const auto first = t.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && t[first] == '{') return fwa::io::load_word(t, e.alphabet());
  if (auto* w = std::get_if<fwa::Facw>(&m->value)) return w->word(w->word_names()->index(t, "word"));
  return fwa::FuzzySet::singleton(e.alphabet(), e.alphabet()->index(t, "symbol"));
}

template <class T>
T get_or(const json& cfg, const char* key, T fallback) {
  return cfg.contains(key) ? cfg.at(key).get<T>() : fallback;
}

fwa::verify::CheckConfig parse_check_config(const json& cfg, bool& timing) {
  static const char* const known[] = {"suites",        "trials",       "seed",   "max_q",  "max_sigma", "max_words",
                                      "max_len",       "max_fuzzy_len", "fuzzy_tokens", "budget", "timing"};
  if (!cfg.is_object()) throw Error(ErrorCode::InvalidArgument, "check configuration must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
        std::end(known)) {
      throw Error(ErrorCode::InvalidArgument, "unknown check option '" + key + "'");
    }
  }
  fwa::verify::CheckConfig c;
  if (cfg.contains("suites")) {
    const json& s = cfg.at("suites");
    c.suites = s.is_string() ? std::vector<std::string>{s.get<std::string>()} : s.get<std::vector<std::string>>();
  }
  c.trials = get_or<std::size_t>(cfg, "trials", c.trials);
  c.seed = get_or<std::uint64_t>(cfg, "seed", c.seed);
  c.bounds.max_states = get_or<std::size_t>(cfg, "max_q", c.bounds.max_states);
  c.bounds.max_symbols = get_or<std::size_t>(cfg, "max_sigma", c.bounds.max_symbols);
  c.bounds.max_words = get_or<std::size_t>(cfg, "max_words", c.bounds.max_words);
  c.max_len = get_or<std::size_t>(cfg, "max_len", c.max_len);
  c.max_fuzzy_len = get_or<std::size_t>(cfg, "max_fuzzy_len", c.max_fuzzy_len);
  c.fuzzy_tokens = get_or<std::size_t>(cfg, "fuzzy_tokens", c.fuzzy_tokens);
  c.budget = get_or<std::uint64_t>(cfg, "budget", c.budget);
  timing = get_or<bool>(cfg, "timing", false);
  if (c.bounds.max_states == 0 || c.bounds.max_symbols == 0 || c.bounds.max_words == 0) {
    throw Error(ErrorCode::InvalidArgument, "max_q, max_sigma and max_words must be at least 1");
  }
  if (c.bounds.max_symbols > 26 || c.bounds.max_words > 26) {
    throw Error(ErrorCode::InvalidArgument, "max_sigma and max_words are limited to 26");
  }
  return c;
}

}  // namespace

extern "C" {

const char* fwa_version(void) { return "0.1.0"; }

const char* fwa_status_string(fwa_status status) {
  switch (status) {
    case FWA_OK: return "ok";
    case FWA_ERR_INVALID_ARGUMENT: return fwa::to_string(ErrorCode::InvalidArgument);
    case FWA_ERR_PARSE: return fwa::to_string(ErrorCode::Parse);
    case FWA_ERR_SCHEMA: return fwa::to_string(ErrorCode::Schema);
    case FWA_ERR_GRADE_RANGE: return fwa::to_string(ErrorCode::GradeRange);
    case FWA_ERR_UNKNOWN_ID: return fwa::to_string(ErrorCode::UnknownId);
    case FWA_ERR_UNIVERSE_MISMATCH: return fwa::to_string(ErrorCode::UniverseMismatch);
    case FWA_ERR_ALPHABET_MISMATCH: return fwa::to_string(ErrorCode::AlphabetMismatch);
    case FWA_ERR_NOT_HOMOMORPHISM: return fwa::to_string(ErrorCode::NotHomomorphism);
    case FWA_ERR_BUDGET_EXCEEDED: return fwa::to_string(ErrorCode::BudgetExceeded);
    case FWA_ERR_IO: return fwa::to_string(ErrorCode::Io);
    case FWA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fwa_last_error(void) { return last_error.c_str(); }

void fwa_string_free(char* s) { std::free(s); }

fwa_status fwa_load_file(const char* path, fwa_automaton** out) {
  return guard([&] {
    require(path, out);
    *out = wrap(fwa::io::load_automaton_file(path));
  });
}

fwa_status fwa_load_string(const char* text, fwa_automaton** out) {
  return guard([&] {
    require(text, out);
    *out = wrap(fwa::io::load_automaton(text));
  });
}

void fwa_free(fwa_automaton* m) { delete m; }

fwa_status fwa_dump(const fwa_automaton* m, char** out_json) {
  return guard([&] {
    require(m, out_json);
    *out_json = copy_out(fwa::io::dump(m->value));
  });
}

fwa_status fwa_kind_of(const fwa_automaton* m, fwa_kind* out) {
  return guard([&] {
    require(m, out);
    *out = std::holds_alternative<fwa::Facv>(m->value) ? FWA_KIND_FACV : FWA_KIND_FACW;
  });
}

fwa_status fwa_accept(const fwa_automaton* m, const char* tokens, double* out) {
  return guard([&] {
    require(m, tokens, out);
    if (auto* w = std::get_if<fwa::Facw>(&m->value)) {
      *out = fwa::accept(*w, fwa::parse_tokens(*w->word_names(), tokens)).value();
    } else {
      const auto& v = std::get<fwa::Facv>(m->value);
      *out = fwa::accept(v, fwa::parse_tokens(*v.alphabet(), tokens)).value();
    }
  });
}

fwa_status fwa_accept_words(const fwa_automaton* m, const char* const* words, size_t count, double* out) {
  return guard([&] {
    require(m, out);
    if (count > 0) require(words);
    fwa::Facaw e = extension_of(m);
    fwa::WordString input;
    input.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      require(words[i]);
      input.push_back(resolve_word(m, e, words[i]));
    }
    *out = fwa::word_accept(e, input).value();
  });
}

fwa_status fwa_retract(const fwa_automaton* m, fwa_automaton** out) {
  return guard([&] {
    require(m, out);
    *out = wrap(fwa::retract(as_facw(m, "retract")));
  });
}

fwa_status fwa_lift(const fwa_automaton* m, fwa_automaton** out) {
  return guard([&] {
    require(m, out);
    *out = wrap(fwa::lift_facv(as_facv(m, "lift")));
  });
}

fwa_status fwa_extend_eval(const fwa_automaton* m, const char* state, const char* word_json, char** out_json) {
  return guard([&] {
    require(m, state, word_json, out_json);
    fwa::Facaw e = extension_of(m);
    fwa::State q = e.states()->index(state, "state");
    fwa::FuzzySet word = fwa::io::load_word(word_json, e.alphabet());
    *out_json = copy_out(fwa::io::fuzzy_set_json(e.transition(q, word)));
  });
}

fwa_status fwa_product(const fwa_automaton* m1, const fwa_automaton* m2, fwa_automaton** out) {
  return guard([&] {
    require(m1, m2, out);
    require_same_kind(m1, m2);
    *out = std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          return wrap(fwa::product(a, std::get<T>(m2->value)));
        },
        m1->value);
  });
}

fwa_status fwa_hom_check(const fwa_automaton* m1, const fwa_automaton* m2, const char* map_json, int* holds,
                         int* violated, char** detail) {
  return guard([&] {
    require(m1, m2, map_json, holds, violated);
    require_same_kind(m1, m2);
    auto f = fwa::io::load_state_map(map_json, states_of(m1), states_of(m2));
    auto check = std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          return fwa::check_homomorphism(f, a, std::get<T>(m2->value));
        },
        m1->value);
    char* text = detail != nullptr ? copy_out(check.detail) : nullptr;
    *holds = check.holds ? 1 : 0;
    *violated = check.violated;
    if (detail != nullptr) *detail = text;
  });
}

fwa_status fwa_hom_image(const fwa_automaton* m1, const fwa_automaton* m2, const char* map_json,
                         fwa_automaton** out) {
  return guard([&] {
    require(m1, m2, map_json, out);
    require_same_kind(m1, m2);
    auto f = fwa::io::load_state_map(map_json, states_of(m1), states_of(m2));
    *out = std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          return wrap(fwa::hom_image(f, a, std::get<T>(m2->value)));
        },
        m1->value);
  });
}

fwa_status fwa_is_subautomaton(const fwa_automaton* m1, const fwa_automaton* m2, int* out) {
  return guard([&] {
    require(m1, m2, out);
    require_same_kind(m1, m2);
    *out = std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          return fwa::is_subautomaton(a, std::get<T>(m2->value));
        },
        m1->value)
               ? 1
               : 0;
  });
}

fwa_status fwa_independence(const fwa_automaton* m, size_t max_len, uint64_t budget, char** out_json) {
  return guard([&] {
    require(m, out_json);
    const fwa::Facw& w = as_facw(m, "independence");
    auto verdict = fwa::is_consistent(w, max_len, budget);
    json witness = json::array();
    for (auto i : verdict.report.witness) witness.push_back(w.word_names()->id(i));
    json doc = {{"bound", verdict.report.bound},       {"witness", witness},
                {"max_len", verdict.report.max_len},   {"strings", verdict.report.strings},
                {"consistent", verdict.consistent},    {"definitive", verdict.definitive}};
    *out_json = copy_out(doc.dump());
  });
}

fwa_status fwa_is_complete(const fwa_automaton* m, int* out) {
  return guard([&] {
    require(m, out);
    *out = fwa::is_complete(as_facw(m, "completeness check")) ? 1 : 0;
  });
}

fwa_status fwa_delta_preserving(const fwa_automaton* m, int* direct, int* syntactic) {
  return guard([&] {
    require(m, direct, syntactic);
    const fwa::Facw& w = as_facw(m, "delta preservation check");
    const bool d = fwa::is_delta_preserving(w);
    const bool s = fwa::preservation_conditions_hold(w);
    *direct = d ? 1 : 0;
    *syntactic = s ? 1 : 0;
  });
}

fwa_status fwa_check(const char* config_json, int* passed, char** report_json, char** table) {
  return guard([&] {
    require(passed);
    json cfg = config_json != nullptr && *config_json != '\0' ? json::parse(config_json) : json::object();
    bool timing = false;
    auto config = parse_check_config(cfg, timing);
    auto reports = fwa::verify::run_checks(config);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed();
    char* report = report_json != nullptr ? copy_out(fwa::verify::report_json(reports, config, timing)) : nullptr;
    char* rendered = nullptr;
    try {
      if (table != nullptr) rendered = copy_out(fwa::verify::report_table(reports));
    } catch (...) {
      std::free(report);
      throw;
    }
    *passed = ok ? 1 : 0;
    if (report_json != nullptr) *report_json = report;
    if (table != nullptr) *table = rendered;
  });
}

fwa_status fwa_check_suites(char** out) {
  return guard([&] {
    require(out);
    std::string names;
    for (auto n : fwa::verify::suite_names()) names.append(n).push_back('\n');
    *out = copy_out(names);
  });
}

fwa_status fwa_format_grade(double grade, int digits, char** out) {
  return guard([&] {
    require(out);
    if (digits < 0) {
      *out = copy_out(fwa::io::format_grade(grade));
      return;
    }
    if (digits > 17) throw Error(ErrorCode::InvalidArgument, "digits must be at most 17");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, grade);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
      s.erase(s.find_last_not_of('0') + 1);
      if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    *out = copy_out(s);
  });
}

}  // extern "C"
