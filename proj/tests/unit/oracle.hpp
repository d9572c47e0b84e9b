#pragma once

// Reference computations for the tests. These work on raw doubles straight
// from the definitions (path enumeration, triple loops) and share no code
// with the library's evaluators.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fwa/automaton.hpp"
#include "fwa/io.hpp"

namespace oracle {

inline double grade(const fwa::FuzzySet& s, std::size_t i) { return s[i].value(); }

// max over all state paths q0 = r0, r1, ..., rn of
// min(δ(r0,a1)(r1), ..., δ(rn-1,an)(rn), F(rn)).
inline double path_accept(const fwa::Facv& m, const std::vector<std::size_t>& w) {
  const std::size_t n = m.states()->size();
  double best = 0.0;
  std::vector<std::size_t> path(w.size() + 1, 0);
  path[0] = m.initial();
  // Odometer over r1..rn.
  while (true) {
    double v = 1.0;
    for (std::size_t i = 0; i < w.size(); ++i) v = std::min(v, grade(m.delta(path[i], w[i]), path[i + 1]));
    v = std::min(v, grade(m.final_states(), path.back()));
    best = std::max(best, v);
    std::size_t i = w.size();
    while (i > 0 && ++path[i] == n) path[i--] = 0;
    if (i == 0) break;
  }
  return best;
}

inline double path_accept(const fwa::Facw& m, const std::vector<std::size_t>& w) {
  return path_accept(m.machine(), w);
}

// δ↓(q,a)(q′) = max_A min(A(a), δ̃(q,A)(q′)).
inline double retract_entry(const fwa::Facw& m, std::size_t q, std::size_t a, std::size_t r) {
  double best = 0.0;
  for (std::size_t w = 0; w < m.word_count(); ++w) {
    best = std::max(best, std::min(grade(m.word(w), a), grade(m.delta(q, w), r)));
  }
  return best;
}

// δ†(q,A′)(q′) = max_A max_x min(A(x), A′(x), δ̃(q,A)(q′)).
inline std::vector<double> dagger(const fwa::Facw& m, std::size_t q, const fwa::FuzzySet& input) {
  std::vector<double> out(m.states()->size(), 0.0);
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (std::size_t w = 0; w < m.word_count(); ++w) {
      for (std::size_t x = 0; x < input.size(); ++x) {
        out[r] = std::max(out[r], std::min({grade(m.word(w), x), grade(input, x), grade(m.delta(q, w), r)}));
      }
    }
  }
  return out;
}

// δ̂(p,A)(q) = max_a min(A(a), δ(p,a)(q)).
inline std::vector<double> zadeh(const fwa::Facv& m, std::size_t p, const fwa::FuzzySet& input) {
  std::vector<double> out(m.states()->size(), 0.0);
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (std::size_t a = 0; a < input.size(); ++a) {
      out[r] = std::max(out[r], std::min(grade(input, a), grade(m.delta(p, a), r)));
    }
  }
  return out;
}

// Fold of a per-step distribution function from 1/p.
template <class Step>
std::vector<double> fold(std::size_t states, std::size_t p, std::size_t length, Step step) {
  std::vector<double> cur(states, 0.0);
  cur[p] = 1.0;
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<double> next(states, 0.0);
    for (std::size_t r = 0; r < states; ++r) {
      if (cur[r] == 0.0) continue;
      auto row = step(r, i);
      for (std::size_t t = 0; t < states; ++t) next[t] = std::max(next[t], std::min(cur[r], row[t]));
    }
    cur = std::move(next);
  }
  return cur;
}

inline std::vector<double> values(const fwa::FuzzySet& s) {
  std::vector<double> out;
  for (auto g : s.grades()) out.push_back(g.value());
  return out;
}

// Hand-rolled random instances for property tests, built through the
// public builders. Grades come from {0, 0.1, ..., 1}.
class Random {
 public:
  explicit Random(std::uint32_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  double grade() { return below(3) == 0 ? 0.0 : static_cast<double>(below(11)) / 10.0; }

  std::vector<std::string> names(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    // Shuffled, so construction order differs from the sorted universe order.
    std::shuffle(out.begin(), out.end(), rng_);
    return out;
  }

  fwa::FuzzySet set(const fwa::UniversePtr& u) {
    std::vector<fwa::Grade> g(u->size());
    for (auto& x : g) x = fwa::Grade(grade());
    return fwa::FuzzySet(u, std::move(g));
  }

  fwa::Facv facv(std::size_t max_q = 4, std::size_t max_sigma = 3) {
    auto q = names("s", 1 + below(max_q));
    auto sigma = names("a", 1 + below(max_sigma));
    return facv_over(q, sigma);
  }

  fwa::Facv facv_over(const std::vector<std::string>& q, const std::vector<std::string>& sigma) {
    fwa::FacvBuilder b(q, sigma, q[below(q.size())]);
    for (const auto& s : q) {
      b.final_grade(s, grade());
      for (const auto& a : sigma) {
        for (const auto& t : q) b.transition(s, a, t, grade());
      }
    }
    return b.build();
  }

  fwa::Facw facw(std::size_t max_q = 4, std::size_t max_sigma = 3, std::size_t max_words = 3) {
    auto q = names("s", 1 + below(max_q));
    auto sigma = names("x", 1 + below(max_sigma));
    std::map<std::string, std::map<std::string, double>> words;
    std::vector<std::map<std::string, double>> seen;
    const std::size_t k = 1 + below(max_words);
    for (std::size_t tries = 0; words.size() < k && tries < 100; ++tries) {
      std::map<std::string, double> w;
      for (const auto& x : sigma) {
        double g = grade();
        if (g > 0) w[x] = g;
      }
      if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
      seen.push_back(w);
      words["W" + std::to_string(words.size())] = w;
    }
    fwa::FacwBuilder b(q, sigma, words, q[below(q.size())]);
    for (const auto& s : q) {
      b.final_grade(s, grade());
      for (const auto& [name, meaning] : words) {
        for (const auto& t : q) b.transition(s, name, t, grade());
      }
    }
    return b.build();
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

// Every string over {0..k-1} of length ≤ max_len.
inline std::vector<std::vector<std::size_t>> all_strings(std::size_t k, std::size_t max_len) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::vector<std::vector<std::size_t>> layer{{}};
  for (std::size_t len = 1; len <= max_len && k > 0; ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& s : layer) {
      for (std::size_t a = 0; a < k; ++a) {
        auto t = s;
        t.push_back(a);
        next.push_back(t);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline fwa::Facw example1() {
  return std::get<fwa::Facw>(fwa::io::load_automaton_file(std::string(FWA_TEST_DATA) + "/example1.json"));
}

}  // namespace oracle
