#include "fwa/fuzzy_set.hpp"

#include <algorithm>
#include <cmath>

namespace fwa {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Schema: return "schema violation";
    case ErrorCode::GradeRange: return "grade out of range";
    case ErrorCode::UnknownId: return "unknown id";
    case ErrorCode::UniverseMismatch: return "universe mismatch";
    case ErrorCode::AlphabetMismatch: return "alphabet mismatch";
    case ErrorCode::NotHomomorphism: return "not a homomorphism";
    case ErrorCode::BudgetExceeded: return "enumeration budget exceeded";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

Universe::Universe(std::vector<std::string> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  auto dup = std::adjacent_find(ids_.begin(), ids_.end());
  if (dup != ids_.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate id '" + *dup + "'");
  }
}

std::shared_ptr<const Universe> Universe::make(std::vector<std::string> ids) {
  return std::make_shared<const Universe>(std::move(ids));
}

std::optional<std::size_t> Universe::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t Universe::index(std::string_view id, std::string_view what) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::UnknownId, "unknown " + std::string(what) + " '" + std::string(id) + "'");
}

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

FuzzySet::FuzzySet(UniversePtr universe)
    : universe_(std::move(universe)), grades_(universe_ ? universe_->size() : 0) {
  if (!universe_) throw Error(ErrorCode::InvalidArgument, "fuzzy set without a universe");
}

FuzzySet::FuzzySet(UniversePtr universe, std::vector<Grade> grades)
    : universe_(std::move(universe)), grades_(std::move(grades)) {
  if (!universe_) throw Error(ErrorCode::InvalidArgument, "fuzzy set without a universe");
  if (grades_.size() != universe_->size()) {
    throw Error(ErrorCode::UniverseMismatch, "grade vector length does not match universe size");
  }
}

FuzzySet FuzzySet::singleton(UniversePtr universe, std::size_t index) {
  FuzzySet s(std::move(universe));
  s.grades_.at(index) = Grade::one();
  return s;
}

FuzzySet FuzzySet::from_map(UniversePtr universe, const std::map<std::string, double>& grades) {
  FuzzySet s(std::move(universe));
  for (const auto& [id, g] : grades) s.grades_[s.universe_->index(id)] = Grade(g);
  return s;
}

Grade FuzzySet::at(std::string_view id) const { return grades_[universe_->index(id)]; }

bool FuzzySet::empty() const {
  return std::all_of(grades_.begin(), grades_.end(), [](Grade g) { return g.is_zero(); });
}

bool FuzzySet::subset_of(const FuzzySet& other) const {
  require_same_universe(*this, other, "subset test");
  for (std::size_t i = 0; i < grades_.size(); ++i) {
    if (grades_[i] > other.grades_[i]) return false;
  }
  return true;
}

std::map<std::string, double> FuzzySet::to_map() const {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < grades_.size(); ++i) {
    if (!grades_[i].is_zero()) out.emplace(universe_->id(i), grades_[i].value());
  }
  return out;
}

bool FuzzySet::operator==(const FuzzySet& other) const {
  return same_universe(universe_, other.universe_) && grades_ == other.grades_;
}

void require_same_universe(const FuzzySet& a, const FuzzySet& b, std::string_view context) {
  if (!same_universe(a.universe(), b.universe())) {
    throw Error(ErrorCode::UniverseMismatch, std::string(context) + ": fuzzy sets live on different universes");
  }
}

namespace {

template <class Op>
FuzzySet pointwise(const FuzzySet& a, const FuzzySet& b, std::string_view context, Op op) {
  require_same_universe(a, b, context);
  std::vector<Grade> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return FuzzySet(a.universe(), std::move(out));
}

}  // namespace

FuzzySet set_union(const FuzzySet& a, const FuzzySet& b) {
  return pointwise(a, b, "union", join);
}

FuzzySet intersection(const FuzzySet& a, const FuzzySet& b) {
  return pointwise(a, b, "intersection", meet);
}

FuzzySet scale_product(Grade lambda, const FuzzySet& a) {
  std::vector<Grade> out(a.grades().begin(), a.grades().end());
  for (auto& g : out) g = meet(lambda, g);
  return FuzzySet(a.universe(), std::move(out));
}

Grade height(const FuzzySet& a) {
  Grade h;
  for (Grade g : a.grades()) h = join(h, g);
  return h;
}

std::vector<std::string> support(const FuzzySet& a) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero()) out.push_back(a.universe()->id(i));
  }
  return out;
}

FuzzySet zadeh_image(std::span<const std::size_t> mapping, const FuzzySet& a, UniversePtr target) {
  if (mapping.size() != a.size()) {
    throw Error(ErrorCode::InvalidArgument, "mapping is not total on the source universe");
  }
  std::vector<Grade> out(target->size());
  for (std::size_t x = 0; x < mapping.size(); ++x) {
    if (mapping[x] >= out.size()) {
      throw Error(ErrorCode::UnknownId, "mapping sends '" + a.universe()->id(x) + "' outside the target universe");
    }
    out[mapping[x]] = join(out[mapping[x]], a[x]);
  }
  return FuzzySet(std::move(target), std::move(out));
}

FuzzySet zadeh_image(const std::map<std::string, std::string>& mapping, const FuzzySet& a,
                     UniversePtr target) {
  std::vector<std::size_t> indices;
  indices.reserve(a.size());
  for (const auto& x : a.universe()->ids()) {
    auto it = mapping.find(x);
    if (it == mapping.end()) {
      throw Error(ErrorCode::InvalidArgument, "mapping undefined on '" + x + "'");
    }
    indices.push_back(target->index(it->second, "target element"));
  }
  return zadeh_image(indices, a, std::move(target));
}

FuzzySet fuzzy_description(const UniversePtr& names, std::span<const FuzzySet> meanings,
                           const FuzzySet& a) {
  if (names->size() != meanings.size()) {
    throw Error(ErrorCode::InvalidArgument, "meaning family does not match its name set");
  }
  std::vector<Grade> out(meanings.size());
  for (std::size_t l = 0; l < meanings.size(); ++l) {
    require_same_universe(meanings[l], a, "fuzzy description");
    Grade h;
    for (std::size_t x = 0; x < a.size(); ++x) h = join(h, meet(meanings[l][x], a[x]));
    out[l] = h;
  }
  return FuzzySet(names, std::move(out));
}

bool approx_equal(const FuzzySet& a, const FuzzySet& b, double tolerance) {
  if (!same_universe(a.universe(), b.universe())) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::fabs(a[i].value() - b[i].value()) > tolerance) return false;
  }
  return true;
}

}  // namespace fwa
