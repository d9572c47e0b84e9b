#include "fwa/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fwa::io {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Schema, path + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) schema_error(path, "expected a string");
  return v.get<std::string>();
}

double as_grade(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "expected a number");
  double g = v.get<double>();
  if (!(g >= 0.0 && g <= 1.0)) {
    throw Error(ErrorCode::GradeRange, path + ": grade " + v.dump() + " is outside [0,1]");
  }
  return g;
}

std::vector<std::string> as_id_list(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array of ids");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto id = as_string(v[i], path + "/" + std::to_string(i));
    if (!seen.insert(id).second) schema_error(path + "/" + std::to_string(i), "duplicate id \"" + id + "\"");
    out.push_back(std::move(id));
  }
  return out;
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

FuzzySet as_fuzzy_set(const json& v, const std::string& path, const UniversePtr& universe, const char* what) {
  if (!v.is_object()) schema_error(path, "expected an object of grades");
  std::vector<Grade> grades(universe->size());
  for (const auto& [key, value] : v.items()) {
    auto sub = path + "/" + escape_pointer(key);
    auto idx = universe->find(key);
    if (!idx) throw Error(ErrorCode::UnknownId, sub + ": unknown " + what + " \"" + key + "\"");
    grades[*idx] = Grade(as_grade(value, sub));
  }
  return FuzzySet(universe, std::move(grades));
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

void check_header(const json& doc, const std::set<std::string>& allowed) {
  if (!doc.is_object()) schema_error("", "document is not a JSON object");
  if (as_string(member(doc, "", "format"), "/format") != kFormat) {
    schema_error("/format", "unsupported format, expected \"" + std::string(kFormat) + "\"");
  }
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) schema_error("/" + escape_pointer(key), "unexpected key");
  }
}

struct MachineParts {
  UniversePtr states;
  UniversePtr inputs;
  State initial;
  FuzzySet final;
  std::vector<FuzzySet> delta;
};

MachineParts parse_machine(const json& doc, UniversePtr inputs, const char* input_what) {
  std::vector<std::string> state_ids = as_id_list(member(doc, "", "states"), "/states");
  auto states = Universe::make(state_ids);
  auto initial_id = as_string(member(doc, "", "initial"), "/initial");
  auto initial = states->find(initial_id);
  if (!initial) throw Error(ErrorCode::UnknownId, "/initial: unknown state \"" + initial_id + "\"");
  FuzzySet final = as_fuzzy_set(member(doc, "", "final"), "/final", states, "state");

  const json& delta = member(doc, "", "delta");
  if (!delta.is_array()) schema_error("/delta", "expected an array of transition rows");
  std::vector<FuzzySet> rows(states->size() * inputs->size(), FuzzySet(states));
  std::vector<bool> seen(rows.size(), false);
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const auto path = "/delta/" + std::to_string(i);
    const json& row = delta[i];
    if (!row.is_object()) schema_error(path, "expected a transition row object");
    for (const auto& [key, value] : row.items()) {
      if (key != "from" && key != "on" && key != "to") schema_error(path + "/" + escape_pointer(key), "unexpected key");
    }
    auto from = as_string(member(row, path, "from"), path + "/from");
    auto on = as_string(member(row, path, "on"), path + "/on");
    auto p = states->find(from);
    if (!p) throw Error(ErrorCode::UnknownId, path + "/from: unknown state \"" + from + "\"");
    auto a = inputs->find(on);
    if (!a) throw Error(ErrorCode::UnknownId, path + "/on: unknown " + input_what + " \"" + on + "\"");
    const std::size_t slot = *p * inputs->size() + *a;
    if (seen[slot]) schema_error(path, "duplicate row for (" + from + ", " + on + ")");
    seen[slot] = true;
    rows[slot] = as_fuzzy_set(member(row, path, "to"), path + "/to", states, "state");
  }
  return {states, std::move(inputs), *initial, std::move(final), std::move(rows)};
}

Facv parse_facv(const json& doc) {
  check_header(doc, {"format", "kind", "description", "states", "initial", "final", "alphabet", "delta"});
  auto alphabet = Universe::make(as_id_list(member(doc, "", "alphabet"), "/alphabet"));
  auto parts = parse_machine(doc, alphabet, "symbol");
  return Facv(parts.states, parts.inputs, std::move(parts.delta), parts.initial, std::move(parts.final));
}

Facw parse_facw(const json& doc) {
  check_header(doc, {"format", "kind", "description", "states", "initial", "final", "underlying_alphabet",
                     "words", "delta"});
  auto sigma = Universe::make(as_id_list(member(doc, "", "underlying_alphabet"), "/underlying_alphabet"));
  const json& words_doc = member(doc, "", "words");
  if (!words_doc.is_object()) schema_error("/words", "expected an object mapping word names to grades");
  std::vector<std::string> names;
  for (const auto& [name, value] : words_doc.items()) names.push_back(name);
  auto word_names = Universe::make(names);
  std::vector<FuzzySet> words;
  for (const auto& name : word_names->ids()) {
    words.push_back(as_fuzzy_set(words_doc.at(name), "/words/" + escape_pointer(name), sigma, "symbol"));
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (words[i] == words[j]) {
        schema_error("/words/" + escape_pointer(word_names->id(i)),
                     "same fuzzy set as word \"" + word_names->id(j) + "\"");
      }
    }
  }
  auto parts = parse_machine(doc, word_names, "word");
  return Facw(parts.states, sigma, word_names, std::move(words), std::move(parts.delta), parts.initial,
              std::move(parts.final));
}

std::string kind_of(const json& doc) {
  if (!doc.is_object()) schema_error("", "document is not a JSON object");
  return as_string(member(doc, "", "kind"), "/kind");
}

// Canonical emitter. Keys are written in sorted order by construction.

std::string quote(const std::string& s) { return json(s).dump(); }

std::string id_list(const Universe& u) {
  std::string out = "[";
  for (std::size_t i = 0; i < u.size(); ++i) out += (i ? ", " : "") + quote(u.id(i));
  return out + "]";
}

std::string grade_map(const FuzzySet& s, bool compact = false) {
  const char* sep = compact ? "," : ", ";
  const char* colon = compact ? ":" : ": ";
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].is_zero()) continue;
    out += (first ? "" : sep) + quote(s.universe()->id(i)) + colon + format_grade(s[i].value());
    first = false;
  }
  return out + "}";
}

std::string delta_block(const Facv& m) {
  std::vector<std::string> rows;
  for (State p = 0; p < m.states()->size(); ++p) {
    for (Symbol a = 0; a < m.alphabet()->size(); ++a) {
      const FuzzySet& row = m.delta(p, a);
      if (row.empty()) continue;
      rows.push_back("    {\"from\": " + quote(m.states()->id(p)) + ", \"on\": " + quote(m.alphabet()->id(a)) +
                     ", \"to\": " + grade_map(row) + "}");
    }
  }
  if (rows.empty()) return "[]";
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) out += rows[i] + (i + 1 < rows.size() ? ",\n" : "\n");
  return out + "  ]";
}

}  // namespace

std::string format_grade(double g) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, g);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Automaton load_automaton(std::string_view text) {
  json doc = parse(text);
  auto kind = kind_of(doc);
  if (kind == "facv") return parse_facv(doc);
  if (kind == "facw") return parse_facw(doc);
  schema_error("/kind", "expected \"facv\" or \"facw\", got \"" + kind + "\"");
}

Automaton load_automaton_file(const std::filesystem::path& path) { return load_automaton(read_file(path)); }

Facv load_facv(std::string_view text) {
  json doc = parse(text);
  if (kind_of(doc) != "facv") schema_error("/kind", "expected \"facv\"");
  return parse_facv(doc);
}

Facw load_facw(std::string_view text) {
  json doc = parse(text);
  if (kind_of(doc) != "facw") schema_error("/kind", "expected \"facw\"");
  return parse_facw(doc);
}

std::string dump(const Facv& m) {
  std::string out = "{\n";
  out += "  \"alphabet\": " + id_list(*m.alphabet()) + ",\n";
  out += "  \"delta\": " + delta_block(m) + ",\n";
  out += "  \"final\": " + grade_map(m.final_states()) + ",\n";
  out += "  \"format\": " + quote(std::string(kFormat)) + ",\n";
  out += "  \"initial\": " + quote(m.states()->id(m.initial())) + ",\n";
  out += "  \"kind\": \"facv\",\n";
  out += "  \"states\": " + id_list(*m.states()) + "\n";
  return out + "}\n";
}

std::string dump(const Facw& m) {
  std::string out = "{\n";
  out += "  \"delta\": " + delta_block(m.machine()) + ",\n";
  out += "  \"final\": " + grade_map(m.final_states()) + ",\n";
  out += "  \"format\": " + quote(std::string(kFormat)) + ",\n";
  out += "  \"initial\": " + quote(m.states()->id(m.initial())) + ",\n";
  out += "  \"kind\": \"facw\",\n";
  out += "  \"states\": " + id_list(*m.states()) + ",\n";
  out += "  \"underlying_alphabet\": " + id_list(*m.underlying_alphabet()) + ",\n";
  if (m.word_count() == 0) {
    out += "  \"words\": {}\n";
  } else {
    out += "  \"words\": {\n";
    for (std::size_t w = 0; w < m.word_count(); ++w) {
      out += "    " + quote(m.word_names()->id(w)) + ": " + grade_map(m.word(w)) +
             (w + 1 < m.word_count() ? ",\n" : "\n");
    }
    out += "  }\n";
  }
  return out + "}\n";
}

std::string dump(const Automaton& m) {
  return std::visit([](const auto& a) { return dump(a); }, m);
}

FuzzySet load_word(std::string_view text, const UniversePtr& alphabet) {
  json doc = parse(text);
  if (kind_of(doc) != "word") schema_error("/kind", "expected \"word\"");
  check_header(doc, {"format", "kind", "description", "grades"});
  return as_fuzzy_set(member(doc, "", "grades"), "/grades", alphabet, "symbol");
}

std::string dump_word(const FuzzySet& word) {
  return "{\"format\": " + quote(std::string(kFormat)) + ", \"grades\": " + grade_map(word) +
         ", \"kind\": \"word\"}\n";
}

StateMap load_state_map(std::string_view text, const UniversePtr& source, const UniversePtr& target) {
  json doc = parse(text);
  if (kind_of(doc) != "state_map") schema_error("/kind", "expected \"state_map\"");
  check_header(doc, {"format", "kind", "description", "map"});
  const json& map = member(doc, "", "map");
  if (!map.is_object()) schema_error("/map", "expected an object mapping source states to target states");
  std::map<std::string, std::string> ids;
  for (const auto& [key, value] : map.items()) {
    auto path = "/map/" + escape_pointer(key);
    if (!source->contains(key)) throw Error(ErrorCode::UnknownId, path + ": unknown source state \"" + key + "\"");
    auto to = as_string(value, path);
    if (!target->contains(to)) throw Error(ErrorCode::UnknownId, path + ": unknown target state \"" + to + "\"");
    ids.emplace(key, to);
  }
  for (const auto& q : source->ids()) {
    if (!ids.count(q)) schema_error("/map", "source state \"" + q + "\" is unmapped");
  }
  return StateMap::from_ids(source, target, ids);
}

std::string dump_state_map(const StateMap& f) {
  std::string out = "{\"format\": " + quote(std::string(kFormat)) + ", \"kind\": \"state_map\", \"map\": {";
  bool first = true;
  for (const auto& [from, to] : f.to_ids()) {
    out += (first ? "" : ", ") + quote(from) + ": " + quote(to);
    first = false;
  }
  return out + "}}\n";
}

std::string fuzzy_set_json(const FuzzySet& s) { return grade_map(s, true); }

}  // namespace fwa::io
