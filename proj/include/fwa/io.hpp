#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "fwa/algebra.hpp"
#include "fwa/automaton.hpp"

namespace fwa::io {

/// Top-level "format" tag of every document.
inline constexpr std::string_view kFormat = "fwa/1";

using Automaton = std::variant<Facv, Facw>;

/// Parses and validates an automaton document ("kind": "facv" | "facw").
/// Schema errors name the JSON path of the offending value.
Automaton load_automaton(std::string_view json);
Automaton load_automaton_file(const std::filesystem::path& path);

Facv load_facv(std::string_view json);
Facw load_facw(std::string_view json);

/// Canonical form: keys sorted, zero grades and empty rows omitted, grades
/// written as the shortest decimal that round-trips. Ends with a newline.
std::string dump(const Facv& m);
std::string dump(const Facw& m);
std::string dump(const Automaton& m);

/// A word document: {"format": "fwa/1", "kind": "word", "grades": {...}}.
/// Ids are resolved against `alphabet`.
FuzzySet load_word(std::string_view json, const UniversePtr& alphabet);
std::string dump_word(const FuzzySet& word);

/// A state map document: {"format": "fwa/1", "kind": "state_map", "map": {...}}.
StateMap load_state_map(std::string_view json, const UniversePtr& source, const UniversePtr& target);
std::string dump_state_map(const StateMap& f);

/// Compact sparse rendering of a fuzzy set as a JSON object, e.g.
/// {"q0":1,"q1":0.2}.
std::string fuzzy_set_json(const FuzzySet& s);

/// Shortest round-trip decimal rendering of a grade.
std::string format_grade(double g);

std::string read_file(const std::filesystem::path& path);

}  // namespace fwa::io
