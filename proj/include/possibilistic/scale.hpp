#pragma once

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "possibilistic/errors.hpp"
#include "possibilistic/rational.hpp"

namespace possibilistic {

using ScaleId = std::uint64_t;

class Scale;

/// A position on a finite ordinal scale. Carries the owning scale's id and
/// cardinality so that order, top and bottom need no scale lookup.
class Level {
 public:
  ScaleId scale() const noexcept { return scale_; }
  std::size_t index() const noexcept { return index_; }
  std::size_t scale_size() const noexcept { return size_; }
  bool is_top() const noexcept { return index_ + 1 == size_; }
  bool is_bottom() const noexcept { return index_ == 0; }

  friend bool operator==(const Level&, const Level&) = default;

 private:
  friend class Scale;
  Level(ScaleId scale, std::uint32_t index, std::uint32_t size)
      : scale_(scale), index_(index), size_(size) {}

  ScaleId scale_;
  std::uint32_t index_;
  std::uint32_t size_;
};

inline std::string scale_mismatch_message(ScaleId a, ScaleId b) {
  return "scale mismatch: levels from scale #" + std::to_string(a) + " and scale #" +
         std::to_string(b);
}

inline void require_same_scale(const Level& a, const Level& b) {
  if (a.scale() != b.scale()) throw ScaleMismatch(scale_mismatch_message(a.scale(), b.scale()));
}

/// Ordering within one scale. Throws ScaleMismatch across scales.
inline std::strong_ordering operator<=>(const Level& a, const Level& b) {
  require_same_scale(a, b);
  return a.index() <=> b.index();
}

inline Level level_min(const Level& a, const Level& b) { return b < a ? b : a; }
inline Level level_max(const Level& a, const Level& b) { return a < b ? b : a; }

/// Finite totally ordered scale with bottom "0" and top "1". Immutable; copies
/// share the same identity.
class Scale {
 public:
  static Scale from_labels(std::vector<std::string> labels, std::string name = {}) {
    std::vector<Rational> values;
    values.reserve(labels.size());
    for (const auto& label : labels) {
      auto v = parse_rational(label);
      if (!v) throw ParseError("scale " + describe(name) + ": label '" + label + "' is not a decimal");
      values.push_back(*v);
    }
    return Scale(std::move(labels), std::move(values), std::move(name));
  }

  /// Builds a scale whose labels are the formatted values. Values must
  /// already be ascending and include 0 and 1.
  static Scale from_values(std::vector<Rational> values, std::string name = {}) {
    std::vector<std::string> labels;
    labels.reserve(values.size());
    for (const auto& v : values) labels.push_back(format_rational(v));
    return Scale(std::move(labels), std::move(values), std::move(name));
  }

  ScaleId id() const noexcept { return rep_->id; }
  const std::string& name() const noexcept { return rep_->name; }
  std::size_t size() const noexcept { return rep_->labels.size(); }
  const std::vector<std::string>& labels() const noexcept { return rep_->labels; }

  Level bottom() const { return at(0); }
  Level top() const { return at(size() - 1); }

  Level at(std::size_t index) const {
    if (index >= size()) {
      throw ValidationError("level index " + std::to_string(index) + " out of range for scale " +
                            describe(name()) + " of size " + std::to_string(size()));
    }
    return Level(id(), static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(size()));
  }

  std::vector<Level> levels() const {
    std::vector<Level> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
    return out;
  }

  /// Looks a level up by label text, falling back to numeric value so that
  /// "0.5" finds ".5".
  std::optional<Level> find(std::string_view label) const {
    const auto& labels = rep_->labels;
    if (auto it = std::find(labels.begin(), labels.end(), label); it != labels.end()) {
      return at(static_cast<std::size_t>(it - labels.begin()));
    }
    if (auto v = parse_rational(label)) return find_value(*v);
    return std::nullopt;
  }

  std::optional<Level> find_value(const Rational& value) const {
    const auto& values = rep_->values;
    auto it = std::lower_bound(values.begin(), values.end(), value);
    if (it == values.end() || *it != value) return std::nullopt;
    return at(static_cast<std::size_t>(it - values.begin()));
  }

  Level parse(std::string_view label) const {
    if (auto level = find(label)) return *level;
    throw ValidationError("label '" + std::string(label) + "' is not a level of scale " +
                          describe(name()));
  }

  const std::string& label(const Level& level) const {
    require(level);
    return rep_->labels[level.index()];
  }

  const Rational& value(const Level& level) const {
    require(level);
    return rep_->values[level.index()];
  }

  bool owns(const Level& level) const noexcept { return level.scale() == id(); }

  void require(const Level& level) const {
    if (!owns(level)) throw ScaleMismatch(scale_mismatch_message(id(), level.scale()));
  }

  friend bool operator==(const Scale& a, const Scale& b) noexcept { return a.id() == b.id(); }

  static std::string describe(const std::string& name) {
    return name.empty() ? std::string("(unnamed)") : "'" + name + "'";
  }

 private:
  struct Rep {
    ScaleId id;
    std::string name;
    std::vector<std::string> labels;
    std::vector<Rational> values;
  };

  Scale(std::vector<std::string> labels, std::vector<Rational> values, std::string name) {
    const std::string who = "scale " + describe(name);
    if (labels.size() < 2) throw ValidationError(who + ": needs at least 2 levels");
    if (labels.size() > 0xFFFF) throw ValidationError(who + ": too many levels");
    if (values.front() != 0) throw ValidationError(who + ": first level must be 0, got '" + labels.front() + "'");
    if (values.back() != 1) throw ValidationError(who + ": last level must be 1, got '" + labels.back() + "'");
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (!(values[i - 1] < values[i])) {
        throw ValidationError(who + ": labels must be strictly increasing ('" + labels[i - 1] +
                              "' then '" + labels[i] + "')");
      }
    }
    static std::atomic<ScaleId> next_id{1};
    rep_ = std::make_shared<const Rep>(
        Rep{next_id.fetch_add(1), std::move(name), std::move(labels), std::move(values)});
  }

  std::shared_ptr<const Rep> rep_;
};

/// A pair of levels of one scale; the carrier of the extended min/max.
struct UtilityPair {
  Level first;
  Level second;

  UtilityPair(Level a, Level b) : first(a), second(b) { require_same_scale(a, b); }

  friend bool operator==(const UtilityPair&, const UtilityPair&) = default;
};

/// Element of the binary utility scale: a pair with max(first, second) = 1.
class BinaryUtility {
 public:
  static BinaryUtility make(const UtilityPair& pair) {
    if (!pair.first.is_top() && !pair.second.is_top()) {
      throw ValidationError("binary utility needs one component at the top level (got indices " +
                            std::to_string(pair.first.index()) + "," +
                            std::to_string(pair.second.index()) + ")");
    }
    return BinaryUtility(pair);
  }
  static BinaryUtility make(Level lambda, Level mu) { return make(UtilityPair(lambda, mu)); }

  const UtilityPair& pair() const noexcept { return pair_; }
  Level lambda() const noexcept { return pair_.first; }
  Level mu() const noexcept { return pair_.second; }
  ScaleId scale() const noexcept { return pair_.first.scale(); }

  friend bool operator==(const BinaryUtility&, const BinaryUtility&) = default;

 private:
  explicit BinaryUtility(const UtilityPair& pair) : pair_(pair) {}
  UtilityPair pair_;
};

namespace detail {

// u ⪰ u' on U_V, the three-case disjunction.
inline bool binary_at_least(const BinaryUtility& u, const BinaryUtility& v) {
  const Level l = u.lambda(), m = u.mu(), l2 = v.lambda(), m2 = v.mu();
  return (l >= l2 && m.is_top() && m2.is_top()) ||
         (l.is_top() && !l2.is_top()) ||
         (l.is_top() && l2.is_top() && m <= m2);
}

}  // namespace detail

/// The linear order on U_V. Top is ⟨1,0⟩, bottom is ⟨0,1⟩.
inline std::strong_ordering compare_binary(const BinaryUtility& u, const BinaryUtility& v) {
  require_same_scale(u.lambda(), v.lambda());
  const bool ge = detail::binary_at_least(u, v);
  const bool le = detail::binary_at_least(v, u);
  if (ge && le) return std::strong_ordering::equal;
  return ge ? std::strong_ordering::greater : std::strong_ordering::less;
}

/// Integer key inducing the same order as compare_binary: ⟨λ,1⟩ ↦ index(λ),
/// ⟨1,μ⟩ ↦ 2(|V|-1) - index(μ). Range [0, 2|V|-2].
inline std::size_t binary_key(const BinaryUtility& u) {
  if (u.mu().is_top()) return u.lambda().index();
  return 2 * (u.mu().scale_size() - 1) - u.mu().index();
}

/// min(α, ⟨β, γ⟩) = ⟨min(α, β), min(α, γ)⟩. The result may leave U_V.
inline UtilityPair ext_min(const Level& alpha, const UtilityPair& p) {
  return UtilityPair(level_min(alpha, p.first), level_min(alpha, p.second));
}

inline UtilityPair ext_max(const UtilityPair& p, const UtilityPair& q) {
  return UtilityPair(level_max(p.first, q.first), level_max(p.second, q.second));
}

/// First failed property of a validated table.
struct Violation {
  std::string property;
  std::string detail;
};

using ValidationResult = std::optional<Violation>;

/// A total map from the levels of one scale to the levels of another,
/// given as one image per source index.
class LevelMap {
 public:
  LevelMap(Scale from, Scale to, std::vector<Level> images)
      : from_(std::move(from)), to_(std::move(to)), images_(std::move(images)) {
    if (images_.size() != from_.size()) {
      throw ValidationError("incomplete table: " + std::to_string(images_.size()) + " of " +
                            std::to_string(from_.size()) + " levels of scale " +
                            Scale::describe(from_.name()) + " mapped");
    }
    for (const auto& image : images_) to_.require(image);
  }

  /// Builds from label pairs; every source level must appear exactly once.
  static LevelMap from_labels(const Scale& from, const Scale& to,
                              const std::vector<std::pair<std::string, std::string>>& entries) {
    std::vector<std::optional<Level>> slots(from.size());
    for (const auto& [src, dst] : entries) {
      const Level s = from.parse(src);
      if (slots[s.index()]) throw ValidationError("level '" + src + "' mapped twice");
      slots[s.index()] = to.parse(dst);
    }
    std::vector<Level> images;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i]) {
        throw ValidationError("incomplete table: level '" + from.labels()[i] + "' of scale " +
                              Scale::describe(from.name()) + " has no image");
      }
      images.push_back(*slots[i]);
    }
    return LevelMap(from, to, std::move(images));
  }

  const Scale& from() const noexcept { return from_; }
  const Scale& to() const noexcept { return to_; }
  const std::vector<Level>& images() const noexcept { return images_; }

  Level operator()(const Level& level) const {
    from_.require(level);
    return images_[level.index()];
  }

 private:
  Scale from_;
  Scale to_;
  std::vector<Level> images_;
};

/// n : U → U. Validity (n∘n = id, anchors, order reversal) is checked by
/// validate_involution, not at construction.
class Involution : public LevelMap {
 public:
  Involution(const Scale& scale, std::vector<Level> images) : LevelMap(scale, scale, std::move(images)) {}
  explicit Involution(LevelMap map) : LevelMap(std::move(map)) {
    if (!(from() == to())) throw ScaleMismatch(scale_mismatch_message(from().id(), to().id()));
  }

  static Involution from_labels(const Scale& scale,
                                const std::vector<std::pair<std::string, std::string>>& entries) {
    return Involution(LevelMap::from_labels(scale, scale, entries));
  }

  /// The unique order-reversing involution of a finite chain.
  static Involution reversal(const Scale& scale) {
    std::vector<Level> images;
    for (std::size_t i = 0; i < scale.size(); ++i) images.push_back(scale.at(scale.size() - 1 - i));
    return Involution(scale, std::move(images));
  }

  const Scale& scale() const noexcept { return from(); }
};

/// h : V → U, order preserving and onto (checked by validate_scale_map).
class ScaleMap : public LevelMap {
 public:
  using LevelMap::LevelMap;
  explicit ScaleMap(LevelMap map) : LevelMap(std::move(map)) {}

  static ScaleMap from_labels(const Scale& from, const Scale& to,
                              const std::vector<std::pair<std::string, std::string>>& entries) {
    return ScaleMap(LevelMap::from_labels(from, to, entries));
  }

  static ScaleMap identity(const Scale& scale) { return ScaleMap(scale, scale, scale.levels()); }
};

inline ValidationResult validate_involution(const Involution& n) {
  const Scale& s = n.scale();
  auto label = [&](const Level& l) { return s.label(l); };
  if (!n(s.top()).is_bottom()) return Violation{"anchor", "n(1) = " + label(n(s.top())) + ", expected 0"};
  if (!n(s.bottom()).is_top()) return Violation{"anchor", "n(0) = " + label(n(s.bottom())) + ", expected 1"};
  for (const Level& x : s.levels()) {
    if (n(n(x)) != x) {
      return Violation{"involution", "n(n(" + label(x) + ")) = " + label(n(n(x)))};
    }
  }
  for (const Level& x : s.levels()) {
    for (const Level& y : s.levels()) {
      if (x < y && n(x) < n(y)) {
        return Violation{"antitonicity", label(x) + " < " + label(y) + " but n(" + label(x) + ") = " +
                                             label(n(x)) + " < n(" + label(y) + ") = " + label(n(y))};
      }
    }
  }
  return std::nullopt;
}

inline ValidationResult validate_scale_map(const ScaleMap& h) {
  const Scale& v = h.from();
  const Scale& u = h.to();
  if (!h(v.top()).is_top()) return Violation{"anchor", "h(1) = " + u.label(h(v.top())) + ", expected 1"};
  if (!h(v.bottom()).is_bottom()) return Violation{"anchor", "h(0) = " + u.label(h(v.bottom())) + ", expected 0"};
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (h(v.at(i)) < h(v.at(i - 1))) {
      return Violation{"monotonicity", "h(" + v.labels()[i - 1] + ") = " + u.label(h(v.at(i - 1))) +
                                           " > h(" + v.labels()[i] + ") = " + u.label(h(v.at(i)))};
    }
  }
  std::vector<bool> hit(u.size(), false);
  for (const Level& image : h.images()) hit[image.index()] = true;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (!hit[j]) return Violation{"surjectivity", "level " + u.labels()[j] + " of U is never hit"};
  }
  return std::nullopt;
}

inline std::string format_pair(const Scale& scale, const UtilityPair& p) {
  return "⟨" + scale.label(p.first) + "," + scale.label(p.second) + "⟩";
}

inline std::string format_binary(const Scale& scale, const BinaryUtility& u) {
  return format_pair(scale, u.pair());
}

}  // namespace possibilistic
