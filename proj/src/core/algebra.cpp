#include "fwa/algebra.hpp"

#include <algorithm>
#include <charconv>

namespace fwa {

StateMap::StateMap(UniversePtr source, UniversePtr target, std::vector<State> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
  if (image_.size() != source_->size()) {
    throw Error(ErrorCode::InvalidArgument, "state map is not total on its source");
  }
  for (State q : image_) {
    if (q >= target_->size()) throw Error(ErrorCode::UnknownId, "state map leaves its target set");
  }
}

StateMap StateMap::from_ids(UniversePtr source, UniversePtr target,
                            const std::map<std::string, std::string>& mapping) {
  std::vector<State> image;
  image.reserve(source->size());
  for (const auto& q : source->ids()) {
    auto it = mapping.find(q);
    if (it == mapping.end()) throw Error(ErrorCode::InvalidArgument, "state map undefined on '" + q + "'");
    image.push_back(target->index(it->second, "target state"));
  }
  for (const auto& [from, to] : mapping) {
    if (!source->contains(from)) throw Error(ErrorCode::UnknownId, "unknown source state '" + from + "'");
  }
  return StateMap(std::move(source), std::move(target), std::move(image));
}

StateMap StateMap::identity(UniversePtr states) {
  std::vector<State> image(states->size());
  for (State q = 0; q < image.size(); ++q) image[q] = q;
  return StateMap(states, states, std::move(image));
}

std::vector<State> StateMap::range() const {
  std::vector<State> out = image_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::map<std::string, std::string> StateMap::to_ids() const {
  std::map<std::string, std::string> out;
  for (State q = 0; q < image_.size(); ++q) out.emplace(source_->id(q), target_->id(image_[q]));
  return out;
}

namespace {

std::string shortest(Grade g) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, g.value());
  return std::string(buf, res.ptr);
}

void require_same_alphabet(const Facv& m1, const Facv& m2) {
  if (!same_universe(m1.alphabet(), m2.alphabet())) {
    throw Error(ErrorCode::AlphabetMismatch, "automata have different input alphabets");
  }
}

void require_same_words(const Facw& m1, const Facw& m2) {
  if (!same_universe(m1.underlying_alphabet(), m2.underlying_alphabet())) {
    throw Error(ErrorCode::AlphabetMismatch, "automata have different underlying alphabets");
  }
  if (!same_universe(m1.word_names(), m2.word_names())) {
    throw Error(ErrorCode::AlphabetMismatch, "automata have different word names");
  }
  for (std::size_t w = 0; w < m1.word_count(); ++w) {
    if (m1.word(w) != m2.word(w)) {
      throw Error(ErrorCode::AlphabetMismatch, "word '" + m1.word_names()->id(w) + "' has different meanings");
    }
  }
}

Facw with_words_of(const Facw& words, Facv machine) {
  std::vector<FuzzySet> rows(machine.delta_rows().begin(), machine.delta_rows().end());
  return Facw(machine.states(), words.underlying_alphabet(), words.word_names(),
              std::vector<FuzzySet>(words.words().begin(), words.words().end()), std::move(rows),
              machine.initial(), machine.final_states());
}

void check_maps(const StateMap& f, const Facv& m1, const Facv& m2) {
  if (!same_universe(f.source(), m1.states()) || !same_universe(f.target(), m2.states())) {
    throw Error(ErrorCode::InvalidArgument, "state map does not go from the first automaton's states to the second's");
  }
}

// Restricts m to the sorted state subset `keep`, dropping grades that leave it.
Facv restrict_to(const Facv& m, const std::vector<State>& keep, State initial) {
  std::vector<std::string> ids;
  for (State q : keep) ids.push_back(m.states()->id(q));
  auto states = Universe::make(std::move(ids));
  const std::size_t n = keep.size();
  auto project = [&](const FuzzySet& s) {
    std::vector<Grade> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = s[keep[i]];
    return FuzzySet(states, std::move(out));
  };
  std::vector<FuzzySet> rows;
  rows.reserve(n * m.alphabet()->size());
  for (State p : keep) {
    for (Symbol a = 0; a < m.alphabet()->size(); ++a) rows.push_back(project(m.delta(p, a)));
  }
  auto it = std::find(keep.begin(), keep.end(), initial);
  return Facv(states, m.alphabet(), std::move(rows), static_cast<State>(it - keep.begin()),
              project(m.final_states()));
}

}  // namespace

Facv product(const Facv& m1, const Facv& m2) {
  require_same_alphabet(m1, m2);
  const std::size_t n1 = m1.states()->size();
  const std::size_t n2 = m2.states()->size();
  const std::size_t k = m1.alphabet()->size();

  // Universe sorts names, so build the pairs first and look their positions up.
  std::vector<std::string> names;
  names.reserve(n1 * n2);
  for (State p = 0; p < n1; ++p) {
    for (State q = 0; q < n2; ++q) names.push_back("(" + m1.states()->id(p) + "," + m2.states()->id(q) + ")");
  }
  auto states = Universe::make(names);
  std::vector<State> pos(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) pos[i] = states->index(names[i]);

  std::vector<FuzzySet> rows(states->size() * k, FuzzySet(states));
  std::vector<Grade> final(states->size());
  for (State p1 = 0; p1 < n1; ++p1) {
    for (State q1 = 0; q1 < n2; ++q1) {
      const State from = pos[p1 * n2 + q1];
      final[from] = meet(m1.final_states()[p1], m2.final_states()[q1]);
      for (Symbol a = 0; a < k; ++a) {
        std::vector<Grade> row(states->size());
        const FuzzySet& r1 = m1.delta(p1, a);
        const FuzzySet& r2 = m2.delta(q1, a);
        for (State p2 = 0; p2 < n1; ++p2) {
          if (r1[p2].is_zero()) continue;
          for (State q2 = 0; q2 < n2; ++q2) row[pos[p2 * n2 + q2]] = meet(r1[p2], r2[q2]);
        }
        rows[from * k + a] = FuzzySet(states, std::move(row));
      }
    }
  }
  return Facv(states, m1.alphabet(), std::move(rows), pos[m1.initial() * n2 + m2.initial()],
              FuzzySet(states, std::move(final)));
}

Facw product(const Facw& m1, const Facw& m2) {
  require_same_words(m1, m2);
  return with_words_of(m1, product(m1.machine(), m2.machine()));
}

HomomorphismCheck check_homomorphism(const StateMap& f, const Facv& m1, const Facv& m2) {
  require_same_alphabet(m1, m2);
  check_maps(f, m1, m2);
  const auto& q1 = *m1.states();
  const auto& q2 = *m2.states();

  if (f(m1.initial()) != m2.initial()) {
    return {false, 1,
            "f(" + q1.id(m1.initial()) + ") = " + q2.id(f(m1.initial())) + " is not the initial state " +
                q2.id(m2.initial())};
  }
  for (State p = 0; p < q1.size(); ++p) {
    for (Symbol a = 0; a < m1.alphabet()->size(); ++a) {
      // Collapse δ1(p,a) along f, then compare against δ2(f(p),a) on f(Q1).
      std::vector<Grade> collapsed(q2.size());
      std::vector<bool> hit(q2.size(), false);
      const FuzzySet& row = m1.delta(p, a);
      for (State r = 0; r < q1.size(); ++r) {
        collapsed[f(r)] = join(collapsed[f(r)], row[r]);
        hit[f(r)] = true;
      }
      const FuzzySet& target = m2.delta(f(p), a);
      for (State s = 0; s < q2.size(); ++s) {
        if (hit[s] && target[s] != collapsed[s]) {
          return {false, 2,
                  "transition from " + q1.id(p) + " on " + m1.alphabet()->id(a) + " into the class of " + q2.id(s) +
                      ": target has " + shortest(target[s]) + ", source supremum is " +
                      shortest(collapsed[s])};
        }
      }
    }
  }
  for (State q = 0; q < q1.size(); ++q) {
    if (m1.final_states()[q] > m2.final_states()[f(q)]) {
      return {false, 3, "final grade of " + q1.id(q) + " exceeds that of " + q2.id(f(q))};
    }
  }
  return {true, 0, {}};
}

HomomorphismCheck check_homomorphism(const StateMap& f, const Facw& m1, const Facw& m2) {
  require_same_words(m1, m2);
  return check_homomorphism(f, m1.machine(), m2.machine());
}

Facv hom_image(const StateMap& f, const Facv& m1, const Facv& m2) {
  auto check = check_homomorphism(f, m1, m2);
  if (!check) {
    throw Error(ErrorCode::NotHomomorphism,
                "condition " + std::to_string(check.violated) + " fails: " + check.detail);
  }
  return restrict_to(m2, f.range(), m2.initial());
}

Facw hom_image(const StateMap& f, const Facw& m1, const Facw& m2) {
  require_same_words(m1, m2);
  return with_words_of(m2, hom_image(f, m1.machine(), m2.machine()));
}

bool is_subautomaton(const Facv& m1, const Facv& m2) {
  if (!same_universe(m1.alphabet(), m2.alphabet())) return false;
  std::vector<State> embed;
  for (const auto& id : m1.states()->ids()) {
    auto q = m2.states()->find(id);
    if (!q) return false;
    embed.push_back(*q);
  }
  if (embed[m1.initial()] != m2.initial()) return false;
  const std::size_t n = embed.size();
  for (State q = 0; q < n; ++q) {
    if (m1.final_states()[q] > m2.final_states()[embed[q]]) return false;
  }
  for (State p = 0; p < n; ++p) {
    for (Symbol a = 0; a < m1.alphabet()->size(); ++a) {
      const FuzzySet& r1 = m1.delta(p, a);
      const FuzzySet& r2 = m2.delta(embed[p], a);
      for (State q = 0; q < n; ++q) {
        if (r1[q] != r2[embed[q]]) return false;
      }
    }
  }
  return true;
}

bool is_subautomaton(const Facw& m1, const Facw& m2) {
  if (!same_universe(m1.underlying_alphabet(), m2.underlying_alphabet()) ||
      !same_universe(m1.word_names(), m2.word_names())) {
    return false;
  }
  for (std::size_t w = 0; w < m1.word_count(); ++w) {
    if (m1.word(w) != m2.word(w)) return false;
  }
  return is_subautomaton(m1.machine(), m2.machine());
}

}  // namespace fwa
