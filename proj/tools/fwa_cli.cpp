// fwa: command line front end over the C API.
//
// Exit codes: 0 success or property holds, 1 property fails, 2 usage or
// input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fwa/fwa.h"

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFails = 1;
constexpr int kUsage = 2;

struct Failure {
  std::string message;
};

void check(fwa_status s) {
  if (s != FWA_OK) throw Failure{std::string(fwa_status_string(s)) + ": " + fwa_last_error()};
}

struct FreeString {
  void operator()(char* s) const { fwa_string_free(s); }
};
using CString = std::unique_ptr<char, FreeString>;

struct FreeAutomaton {
  void operator()(fwa_automaton* m) const { fwa_free(m); }
};
using Automaton = std::unique_ptr<fwa_automaton, FreeAutomaton>;

std::string take(char* s) { return CString(s).get(); }

Automaton load(const std::string& path) {
  fwa_automaton* m = nullptr;
  check(fwa_load_file(path.c_str(), &m));
  return Automaton(m);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Output {
  int digits = -1;
  bool json = false;

  std::string grade(double g) const {
    char* s = nullptr;
    check(fwa_format_grade(g, digits, &s));
    return take(s);
  }

  // Re-renders a compact fuzzy set object at the requested precision.
  std::string fuzzy_set(const std::string& text) const {
    auto doc = nlohmann::ordered_json::parse(text);
    std::string out = "{";
    bool first = true;
    for (const auto& [id, g] : doc.items()) {
      out += (first ? "" : ",") + nlohmann::json(id).dump() + ":" + grade(g.get<double>());
      first = false;
    }
    return out + "}";
  }
};

void write_document(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{"cannot write '" + path + "'"};
}

void emit(Automaton m, const std::string& path) {
  char* text = nullptr;
  check(fwa_dump(m.get(), &text));
  write_document(take(text), path);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string json_bool(bool b) { return b ? "true" : "false"; }

std::vector<std::string> split_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-min fuzzy automata for computing with words"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(fwa_version()));

  Output out;
  app.add_option("--digits", out.digits, "Round printed grades to n decimals (default: full precision)")
      ->check(CLI::Range(0, 17));
  app.add_flag("--json", out.json, "Machine-readable output");

  int code = kOk;

  // accept
  std::string accept_path, accept_input;
  bool accept_extended = false;
  std::vector<std::string> accept_word_files;
  auto* accept = app.add_subcommand("accept", "Acceptance degree of a token string");
  accept->add_option("automaton", accept_path, "Automaton document")->required();
  accept->add_option("--input", accept_input,
                     "Whitespace-separated tokens, empty by default; with --extended a token @path names a word file")
      ->expected(0, 1);
  accept->add_flag("--extended", accept_extended, "Evaluate through the extension over all fuzzy words");
  accept->add_option("--word-file", accept_word_files, "Word document appended to the input (implies --extended)");
  accept->callback([&] {
    auto m = load(accept_path);
    double g = 0.0;
    if (accept_extended || !accept_word_files.empty()) {
      std::vector<std::string> words;
      for (const auto& t : split_tokens(accept_input)) words.push_back(t[0] == '@' ? read_text(t.substr(1)) : t);
      for (const auto& f : accept_word_files) words.push_back(read_text(f));
      std::vector<const char*> ptrs;
      for (const auto& w : words) ptrs.push_back(w.c_str());
      check(fwa_accept_words(m.get(), ptrs.data(), ptrs.size(), &g));
    } else {
      check(fwa_accept(m.get(), accept_input.c_str(), &g));
    }
    std::cout << (out.json ? "{\"grade\": " + out.grade(g) + "}" : out.grade(g)) << '\n';
  });

  // retract / lift
  std::string unary_in, unary_out;
  auto* retract = app.add_subcommand("retract", "Retraction of a facw to a facv");
  retract->add_option("input", unary_in, "facw document")->required();
  retract->add_option("output", unary_out, "Output path (default: stdout)");
  retract->callback([&] {
    fwa_automaton* r = nullptr;
    check(fwa_retract(load(unary_in).get(), &r));
    emit(Automaton(r), unary_out);
  });

  auto* lift = app.add_subcommand("lift", "View a facv as a facw over singleton words");
  lift->add_option("input", unary_in, "facv document")->required();
  lift->add_option("output", unary_out, "Output path (default: stdout)");
  lift->callback([&] {
    fwa_automaton* r = nullptr;
    check(fwa_lift(load(unary_in).get(), &r));
    emit(Automaton(r), unary_out);
  });

  // extend-eval
  std::string eval_path, eval_state, eval_word;
  auto* extend_eval = app.add_subcommand("extend-eval", "One transition of the extension on a fuzzy word");
  extend_eval->add_option("automaton", eval_path, "Automaton document")->required();
  extend_eval->add_option("--state", eval_state, "Source state")->required();
  extend_eval->add_option("--word-file", eval_word, "Word document")->required();
  extend_eval->callback([&] {
    auto m = load(eval_path);
    auto word = read_text(eval_word);
    char* set = nullptr;
    check(fwa_extend_eval(m.get(), eval_state.c_str(), word.c_str(), &set));
    std::cout << out.fuzzy_set(take(set)) << '\n';
  });

  // product
  std::string bin_a, bin_b, bin_out;
  auto* product = app.add_subcommand("product", "Product of two automata over the same inputs");
  product->add_option("first", bin_a, "Automaton document")->required();
  product->add_option("second", bin_b, "Automaton document")->required();
  product->add_option("output", bin_out, "Output path (default: stdout)");
  product->callback([&] {
    fwa_automaton* p = nullptr;
    check(fwa_product(load(bin_a).get(), load(bin_b).get(), &p));
    emit(Automaton(p), bin_out);
  });

  // hom-check / hom-image
  std::string map_path;
  auto* hom_check = app.add_subcommand("hom-check", "Check that a state map is a homomorphism");
  hom_check->add_option("source", bin_a, "Automaton document")->required();
  hom_check->add_option("target", bin_b, "Automaton document")->required();
  hom_check->add_option("map", map_path, "State map document")->required();
  hom_check->callback([&] {
    auto m1 = load(bin_a);
    auto m2 = load(bin_b);
    auto map = read_text(map_path);
    int holds = 0, violated = 0;
    char* detail = nullptr;
    check(fwa_hom_check(m1.get(), m2.get(), map.c_str(), &holds, &violated, &detail));
    std::string why = take(detail);
    if (out.json) {
      std::cout << "{\"detail\": " << nlohmann::json(why).dump() << ", \"holds\": " << json_bool(holds)
                << ", \"violated\": " << violated << "}\n";
    } else if (holds) {
      std::cout << "homomorphism\n";
    } else {
      std::cout << "not a homomorphism: condition " << violated << ": " << why << '\n';
    }
    if (!holds) code = kPropertyFails;
  });

  auto* hom_image = app.add_subcommand("hom-image", "Image of the source under a homomorphism");
  hom_image->add_option("source", bin_a, "Automaton document")->required();
  hom_image->add_option("target", bin_b, "Automaton document")->required();
  hom_image->add_option("map", map_path, "State map document")->required();
  hom_image->add_option("output", bin_out, "Output path (default: stdout)");
  hom_image->callback([&] {
    auto map = read_text(map_path);
    fwa_automaton* img = nullptr;
    check(fwa_hom_image(load(bin_a).get(), load(bin_b).get(), map.c_str(), &img));
    emit(Automaton(img), bin_out);
  });

  // subautomaton
  auto* sub = app.add_subcommand("subautomaton", "Whether the first automaton is a subautomaton of the second");
  sub->add_option("first", bin_a, "Automaton document")->required();
  sub->add_option("second", bin_b, "Automaton document")->required();
  sub->callback([&] {
    int result = 0;
    check(fwa_is_subautomaton(load(bin_a).get(), load(bin_b).get(), &result));
    std::cout << (out.json ? "{\"subautomaton\": " + json_bool(result) + "}" : yes_no(result)) << '\n';
    if (!result) code = kPropertyFails;
  });

  // independence
  std::string ind_path;
  std::size_t ind_len = 3;
  std::uint64_t ind_budget = 1'000'000;
  auto* independence = app.add_subcommand("independence", "Bounded independence degree of a facw");
  independence->add_option("automaton", ind_path, "facw document")->required();
  independence->add_option("--max-len", ind_len, "Longest word string compared")->capture_default_str();
  independence->add_option("--budget", ind_budget, "Maximum number of strings compared")->capture_default_str();
  independence->callback([&] {
    char* text = nullptr;
    check(fwa_independence(load(ind_path).get(), ind_len, ind_budget, &text));
    auto doc = nlohmann::json::parse(take(text));
    std::string witness;
    for (const auto& w : doc["witness"]) witness += (witness.empty() ? "" : " ") + w.get<std::string>();
    const std::string bound = out.grade(doc["bound"].get<double>());
    if (out.json) {
      std::cout << "{\"bound\": " << bound << ", \"consistent\": " << json_bool(doc["consistent"].get<bool>())
                << ", \"definitive\": " << json_bool(doc["definitive"].get<bool>())
                << ", \"max_len\": " << doc["max_len"].get<std::size_t>()
                << ", \"strings\": " << doc["strings"].get<std::uint64_t>()
                << ", \"witness\": " << doc["witness"].dump() << "}\n";
    } else {
      std::cout << "bound " << bound << " witness " << (witness.empty() ? "(empty)" : witness) << '\n'
                << "compared " << doc["strings"].get<std::uint64_t>() << " strings up to length "
                << doc["max_len"].get<std::size_t>() << "; "
                << (doc["consistent"].get<bool>() ? "consistent" : "inconsistent")
                << (doc["definitive"].get<bool>() ? "" : " up to that length") << '\n';
    }
  });

  // preserving / complete
  std::string prop_path;
  auto* preserving = app.add_subcommand("preserving", "Whether the extension preserves the transitions of a facw");
  preserving->add_option("automaton", prop_path, "facw document")->required();
  preserving->callback([&] {
    int direct = 0, syntactic = 0;
    check(fwa_delta_preserving(load(prop_path).get(), &direct, &syntactic));
    if (out.json) {
      std::cout << "{\"conditions\": " << json_bool(syntactic) << ", \"preserving\": " << json_bool(direct) << "}\n";
    } else {
      std::cout << "preserving " << yes_no(direct) << " (conditions " << yes_no(syntactic) << ")\n";
    }
    if (!direct) code = kPropertyFails;
  });

  auto* complete = app.add_subcommand("complete", "Whether every symbol occurs in some word");
  complete->add_option("automaton", prop_path, "facw document")->required();
  complete->callback([&] {
    int result = 0;
    check(fwa_is_complete(load(prop_path).get(), &result));
    std::cout << (out.json ? "{\"complete\": " + json_bool(result) + "}" : yes_no(result)) << '\n';
    if (!result) code = kPropertyFails;
  });

  // check
  std::vector<std::string> suites{"all"};
  std::size_t trials = 100, max_q = 4, max_sigma = 3, max_words = 3, max_len = 3, max_fuzzy_len = 2,
              fuzzy_tokens = 20;
  std::uint64_t seed = 7, budget = 1'000'000;
  bool timing = false, list = false;
  auto* check_cmd = app.add_subcommand("check", "Run the randomized property suites");
  check_cmd->add_option("--suite", suites, "Suite name, repeatable, or 'all'")->capture_default_str();
  check_cmd->add_option("--trials", trials, "Instances per suite")->capture_default_str();
  check_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  check_cmd->add_option("--max-q", max_q, "Largest state set")->check(CLI::Range(1, 64))->capture_default_str();
  check_cmd->add_option("--max-sigma", max_sigma, "Largest underlying alphabet")
      ->check(CLI::Range(1, 26))
      ->capture_default_str();
  check_cmd->add_option("--max-words", max_words, "Largest word set")->check(CLI::Range(1, 26))->capture_default_str();
  check_cmd->add_option("--max-len", max_len, "Longest enumerated string")->capture_default_str();
  check_cmd->add_option("--max-fuzzy-len", max_fuzzy_len, "Longest enumerated fuzzy-word string")
      ->capture_default_str();
  check_cmd->add_option("--fuzzy-tokens", fuzzy_tokens, "Random fuzzy words added to the word set")
      ->capture_default_str();
  check_cmd->add_option("--budget", budget, "Enumeration budget per query")->capture_default_str();
  check_cmd->add_flag("--timing", timing, "Include elapsed times in the JSON report");
  check_cmd->add_flag("--list", list, "List the suites and exit");
  check_cmd->callback([&] {
    if (list) {
      char* names = nullptr;
      check(fwa_check_suites(&names));
      std::cout << take(names);
      return;
    }
    nlohmann::json cfg = {{"suites", suites},          {"trials", trials},
                          {"seed", seed},              {"max_q", max_q},
                          {"max_sigma", max_sigma},    {"max_words", max_words},
                          {"max_len", max_len},        {"max_fuzzy_len", max_fuzzy_len},
                          {"fuzzy_tokens", fuzzy_tokens}, {"budget", budget},
                          {"timing", timing}};
    int passed = 0;
    char* report = nullptr;
    char* table = nullptr;
    check(fwa_check(cfg.dump().c_str(), &passed, out.json ? &report : nullptr, out.json ? nullptr : &table));
    std::cout << (out.json ? take(report) : take(table));
    if (!passed) code = kPropertyFails;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const Failure& f) {
    std::cerr << "fwa: " << f.message << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "fwa: " << e.what() << '\n';
    return kUsage;
  }
  return code;
}
