#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "possibilistic/lottery.hpp"
#include "possibilistic/universe.hpp"
#include "possibilistic/utility.hpp"

namespace possibilistic {

enum class AxiomId {
  A1_minus,  // total preorder
  A2_minus,  // uncertainty aversion
  A2_plus,   // uncertainty attraction
  A3_minus,  // substitutability
  A4_minus,  // continuity into B⁻, all lotteries
  A4_plus,   // continuity into B⁺, all lotteries
  B1,
  B2,        // qualitative monotonicity, both directions
  B3,
  B4,        // continuity into B, prizes only
  B4_minus,
  B4_plus,
  B2_sufficiency,        // only the "if" half of B2
  unique_standard_equivalent,  // each lottery has exactly one standard equivalent
  half_decomposition,  // ⪰ on B = ⪰⁻ ∪ ⪰⁺ ∪ (B⁻ × B⁺)
};

inline const char* to_string(AxiomId id) {
  switch (id) {
    case AxiomId::A1_minus: return "A1-";
    case AxiomId::A2_minus: return "A2-";
    case AxiomId::A2_plus: return "A2+";
    case AxiomId::A3_minus: return "A3-";
    case AxiomId::A4_minus: return "A4-";
    case AxiomId::A4_plus: return "A4+";
    case AxiomId::B1: return "B1";
    case AxiomId::B2: return "B2";
    case AxiomId::B3: return "B3";
    case AxiomId::B4: return "B4";
    case AxiomId::B4_minus: return "B4-";
    case AxiomId::B4_plus: return "B4+";
    case AxiomId::B2_sufficiency: return "B2-if";
    case AxiomId::unique_standard_equivalent: return "unique-standard";
    case AxiomId::half_decomposition: return "half-decomposition";
  }
  return "?";
}

/// A concrete failing tuple. `members` are universe indices whose meaning
/// depends on `property`; `weights` are level indices (λ, μ) for mixtures.
struct Witness {
  std::string property;
  std::vector<std::size_t> members;
  std::optional<std::pair<std::size_t, std::size_t>> weights;
};

struct AxiomReport {
  AxiomId axiom;
  bool satisfied = true;
  std::optional<Witness> witness;

  static AxiomReport ok(AxiomId id) { return {id, true, std::nullopt}; }
  static AxiomReport fail(AxiomId id, Witness w) { return {id, false, std::move(w)}; }
};

inline std::string format_witness(const LotteryUniverse& universe, const Witness& w) {
  std::string out = w.property + "[";
  for (std::size_t i = 0; i < w.members.size(); ++i) {
    if (i) out += " ; ";
    out += universe.describe(w.members[i]);
  }
  out += "]";
  if (w.weights) {
    out += " weights=(" + universe.scale().labels()[w.weights->first] + "," +
           universe.scale().labels()[w.weights->second] + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Total preorder (A1⁻ / B1)

inline AxiomReport check_total_preorder(const PreferenceRelation& r, AxiomId id = AxiomId::B1) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.holds(i, i)) return AxiomReport::fail(id, {"reflexivity", {i}, std::nullopt});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!r.holds(i, j) && !r.holds(j, i)) return AxiomReport::fail(id, {"completeness", {i, j}, std::nullopt});
    }
  }
  // i ⪰ j and j ⪰ k imply i ⪰ k: row(j) must be a subset of row(i).
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = r.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (!r.holds(i, j)) continue;
      const auto rj = r.row(j);
      for (std::size_t w = 0; w < ri.size(); ++w) {
        const std::uint64_t missing = rj[w] & ~ri[w];
        if (missing) {
          const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(missing));
          return AxiomReport::fail(id, {"transitivity", {i, j, k}, std::nullopt});
        }
      }
    }
  }
  return AxiomReport::ok(id);
}

// ---------------------------------------------------------------------------
// Uncertainty attitude (A2⁻ / A2⁺)

enum class Attitude { aversion, attraction };

/// (i, j) violates aversion if π_i ≤ π_j pointwise but not i ⪰ j; attraction
/// if π_i ≥ π_j pointwise but not i ⪰ j.
inline bool attitude_violation(const PreferenceRelation& r, std::size_t i, std::size_t j, Attitude attitude) {
  const auto& u = r.universe();
  const bool premise = attitude == Attitude::aversion ? u.pointwise_le(i, j) : u.pointwise_le(j, i);
  return premise && !r.holds(i, j);
}

inline AxiomReport check_uncertainty_attitude(const PreferenceRelation& r, Attitude attitude) {
  const AxiomId id = attitude == Attitude::aversion ? AxiomId::A2_minus : AxiomId::A2_plus;
  const char* property = attitude == Attitude::aversion ? "aversion" : "attraction";
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (attitude_violation(r, i, j, attitude)) return AxiomReport::fail(id, {property, {i, j}, std::nullopt});
    }
  }
  return AxiomReport::ok(id);
}

// ---------------------------------------------------------------------------
// Substitutability (A3⁻ / B3)

using WeightPair = std::pair<std::size_t, std::size_t>;

/// Every (λ, μ) of level indices with max(λ, μ) = 1: 2|V| − 1 pairs.
inline std::vector<WeightPair> all_weight_pairs(const Scale& scale) {
  const std::size_t top = scale.size() - 1;
  std::vector<WeightPair> out;
  for (std::size_t m = 0; m <= top; ++m) out.emplace_back(top, m);
  for (std::size_t l = 0; l < top; ++l) out.emplace_back(l, top);
  return out;
}

namespace detail {

inline std::optional<Witness> substitution_failure(const PreferenceRelation& r, std::size_t a, std::size_t b,
                                                   const std::vector<WeightPair>& weights) {
  const auto& u = r.universe();
  for (std::size_t k = 0; k < r.size(); ++k) {
    for (const auto& [l, m] : weights) {
      const std::size_t ma = u.mix(l, a, m, k);
      const std::size_t mb = u.mix(l, b, m, k);
      if (!r.indifferent(ma, mb)) return Witness{"substitutability", {a, b, k}, WeightPair{l, m}};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// If π₁ ∼ π₂ then (λ/π₁, μ/π) ∼ (λ/π₂, μ/π) for every π and weight pair.
/// On a total preorder ∼ is an equivalence, so each member is only compared
/// with the first member of its class.
inline AxiomReport check_substitutability(const PreferenceRelation& r, const std::vector<WeightPair>& weights,
                                          AxiomId id = AxiomId::B3) {
  for (const auto& [l, m] : weights) {
    if (l + 1 != r.universe().scale().size() && m + 1 != r.universe().scale().size()) {
      throw ValidationError("substitutability weight pair is not normalized");
    }
  }
  const std::size_t n = r.size();
  if (check_total_preorder(r).satisfied) {
    std::vector<std::size_t> representative(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (representative[i] != n) continue;
      representative[i] = i;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (representative[j] == n && r.indifferent(i, j)) {
          representative[j] = i;
          if (auto w = detail::substitution_failure(r, i, j, weights)) return AxiomReport::fail(id, std::move(*w));
        }
      }
    }
    return AxiomReport::ok(id);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!r.indifferent(i, j)) continue;
      if (auto w = detail::substitution_failure(r, i, j, weights)) return AxiomReport::fail(id, std::move(*w));
    }
  }
  return AxiomReport::ok(id);
}

// ---------------------------------------------------------------------------
// Continuity (A4⁻, A4⁺, B4, B4⁻, B4⁺)

enum class Continuity { A4_minus, A4_plus, B4, B4_minus, B4_plus };

inline AxiomId axiom_of(Continuity c) {
  switch (c) {
    case Continuity::A4_minus: return AxiomId::A4_minus;
    case Continuity::A4_plus: return AxiomId::A4_plus;
    case Continuity::B4: return AxiomId::B4;
    case Continuity::B4_minus: return AxiomId::B4_minus;
    case Continuity::B4_plus: return AxiomId::B4_plus;
  }
  return AxiomId::B4;
}

namespace detail {

inline bool continuity_target(const LotteryUniverse& u, std::size_t s, Continuity c) {
  switch (c) {
    case Continuity::A4_minus:
    case Continuity::B4_minus: return u.in_b_minus(s);
    case Continuity::A4_plus:
    case Continuity::B4_plus: return u.in_b_plus(s);
    case Continuity::B4: return true;
  }
  return false;
}

inline std::vector<std::size_t> continuity_domain(const LotteryUniverse& u, Continuity c) {
  std::vector<std::size_t> out;
  if (c == Continuity::A4_minus || c == Continuity::A4_plus) {
    for (std::size_t i = 0; i < u.size(); ++i) out.push_back(i);
  } else {
    for (std::size_t x = 0; x < u.outcomes().size(); ++x) out.push_back(u.point_mass(x));
  }
  return out;
}

inline bool has_equivalent(const PreferenceRelation& r, std::size_t pi, Continuity c) {
  const auto& u = r.universe();
  for (std::size_t s : u.standard_members()) {
    if (continuity_target(u, s, c) && r.indifferent(pi, s)) return true;
  }
  return false;
}

}  // namespace detail

/// A4 variants quantify over every lottery, B4 variants over the prizes
/// (point masses). Targets are B⁻, B⁺ or B as the variant dictates.
inline AxiomReport check_continuity(const PreferenceRelation& r, Continuity variant) {
  for (std::size_t pi : detail::continuity_domain(r.universe(), variant)) {
    if (!detail::has_equivalent(r, pi, variant)) {
      return AxiomReport::fail(axiom_of(variant), {"no standard equivalent", {pi}, std::nullopt});
    }
  }
  return AxiomReport::ok(axiom_of(variant));
}

// ---------------------------------------------------------------------------
// Qualitative monotonicity (B2) and the decomposition of the order on B

/// σ ⪰ σ′ by the three-case rule on standard lotteries, given level indices.
inline bool qualitative_order(std::size_t lambda, std::size_t mu, std::size_t lambda2, std::size_t mu2,
                              std::size_t top) {
  if (lambda >= lambda2 && mu == top && mu2 == top) return true;
  if (lambda == top && lambda2 < top) return true;
  return lambda == top && lambda2 == top && mu <= mu2;
}

enum class MonotonicityMode { biconditional, sufficiency };

inline AxiomReport check_qualitative_monotonicity(const PreferenceRelation& r,
                                                  MonotonicityMode mode = MonotonicityMode::biconditional) {
  const auto& u = r.universe();
  const std::size_t top = u.scale().size() - 1;
  const std::size_t best = u.outcomes().best(), worst = u.outcomes().worst();
  const AxiomId id = mode == MonotonicityMode::biconditional ? AxiomId::B2 : AxiomId::B2_sufficiency;
  for (std::size_t s : u.standard_members()) {
    for (std::size_t t : u.standard_members()) {
      const bool expected = qualitative_order(u.level(s, best), u.level(s, worst), u.level(t, best), u.level(t, worst), top);
      const bool actual = r.holds(s, t);
      if (expected && !actual) return AxiomReport::fail(id, {"sufficiency", {s, t}, std::nullopt});
      if (mode == MonotonicityMode::biconditional && actual && !expected) {
        return AxiomReport::fail(id, {"necessity", {s, t}, std::nullopt});
      }
    }
  }
  return AxiomReport::ok(id);
}

/// Checks that ⪰ restricted to B is the union of its restriction to B⁻, its
/// restriction to B⁺ and B⁻ × B⁺, and that those restrictions are the orders
/// imposed by aversion on B⁻ and attraction on B⁺.
inline AxiomReport check_lemma3_decomposition(const PreferenceRelation& r) {
  const auto& u = r.universe();
  const std::size_t best = u.outcomes().best(), worst = u.outcomes().worst();
  constexpr AxiomId id = AxiomId::half_decomposition;
  for (std::size_t s : u.standard_members()) {
    for (std::size_t t : u.standard_members()) {
      const bool s_minus = u.in_b_minus(s), s_plus = u.in_b_plus(s);
      const bool t_minus = u.in_b_minus(t), t_plus = u.in_b_plus(t);
      const bool holds = r.holds(s, t);
      const bool in_union = (s_minus && t_minus && holds) || (s_plus && t_plus && holds) || (s_minus && t_plus);
      if (holds != in_union) return AxiomReport::fail(id, {"cross-half", {s, t}, std::nullopt});
      if (s_minus && t_minus && holds != (u.level(s, worst) <= u.level(t, worst))) {
        return AxiomReport::fail(id, {"B- order", {s, t}, std::nullopt});
      }
      if (s_plus && t_plus && holds != (u.level(s, best) >= u.level(t, best))) {
        return AxiomReport::fail(id, {"B+ order", {s, t}, std::nullopt});
      }
    }
  }
  return AxiomReport::ok(id);
}

/// Each lottery is indifferent to exactly one standard lottery, and that one
/// is reduce_to_standard(π).
inline AxiomReport check_unique_standard_equivalent(const PreferenceRelation& r, const BasicUtilityAssessment& a) {
  const auto& u = r.universe();
  constexpr AxiomId id = AxiomId::unique_standard_equivalent;
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::vector<std::size_t> equivalents;
    for (std::size_t s : u.standard_members()) {
      if (r.indifferent(i, s)) equivalents.push_back(s);
    }
    if (equivalents.empty()) return AxiomReport::fail(id, {"no standard equivalent", {i}, std::nullopt});
    if (equivalents.size() > 1) {
      std::vector<std::size_t> members{i};
      members.insert(members.end(), equivalents.begin(), equivalents.end());
      return AxiomReport::fail(id, {"several standard equivalents", members, std::nullopt});
    }
    const auto sigma = reduce_to_standard(u.member(i), a);
    const std::size_t reduced = u.standard(sigma.lambda().index(), sigma.mu().index());
    if (reduced != equivalents.front()) {
      return AxiomReport::fail(id, {"reduction mismatch", {i, reduced}, std::nullopt});
    }
  }
  return AxiomReport::ok(id);
}

// ---------------------------------------------------------------------------

/// Re-evaluates a failed report's witness against the relation. Returns true
/// when the witness indeed demonstrates the violation. Substitutability
/// witnesses are replayed through mixture() rather than the universe's
/// index arithmetic.
inline bool replay_witness(const PreferenceRelation& r, const AxiomReport& report) {
  if (report.satisfied || !report.witness) return false;
  const Witness& w = *report.witness;
  const auto& u = r.universe();
  const auto& m = w.members;
  const std::size_t top = u.scale().size() - 1;
  const std::size_t best = u.outcomes().best(), worst = u.outcomes().worst();
  if (w.property == "reflexivity") return m.size() == 1 && !r.holds(m[0], m[0]);
  if (w.property == "completeness") return m.size() == 2 && !r.holds(m[0], m[1]) && !r.holds(m[1], m[0]);
  if (w.property == "transitivity") {
    return m.size() == 3 && r.holds(m[0], m[1]) && r.holds(m[1], m[2]) && !r.holds(m[0], m[2]);
  }
  if (w.property == "aversion") return m.size() == 2 && attitude_violation(r, m[0], m[1], Attitude::aversion);
  if (w.property == "attraction") return m.size() == 2 && attitude_violation(r, m[0], m[1], Attitude::attraction);
  if (w.property == "substitutability") {
    if (m.size() != 3 || !w.weights || !r.indifferent(m[0], m[1])) return false;
    const Level lambda = u.scale().at(w.weights->first), mu = u.scale().at(w.weights->second);
    const auto a = u.index_of(mixture(lambda, u.member(m[0]), mu, u.member(m[2])));
    const auto b = u.index_of(mixture(lambda, u.member(m[1]), mu, u.member(m[2])));
    return a && b && !r.indifferent(*a, *b);
  }
  if (w.property == "no standard equivalent") {
    if (m.size() != 1) return false;
    switch (report.axiom) {
      case AxiomId::A4_minus: return !detail::has_equivalent(r, m[0], Continuity::A4_minus);
      case AxiomId::A4_plus: return !detail::has_equivalent(r, m[0], Continuity::A4_plus);
      case AxiomId::B4_minus: return !detail::has_equivalent(r, m[0], Continuity::B4_minus);
      case AxiomId::B4_plus: return !detail::has_equivalent(r, m[0], Continuity::B4_plus);
      default: return !detail::has_equivalent(r, m[0], Continuity::B4);
    }
  }
  if (w.property == "several standard equivalents") {
    if (m.size() < 3) return false;
    for (std::size_t k = 1; k < m.size(); ++k) {
      if (!u.is_standard(m[k]) || !r.indifferent(m[0], m[k])) return false;
    }
    return true;
  }
  if (w.property == "reduction mismatch") return m.size() == 2 && u.is_standard(m[1]) && !r.indifferent(m[0], m[1]);
  if (m.size() != 2 || !u.is_standard(m[0]) || !u.is_standard(m[1])) return false;
  const bool expected = qualitative_order(u.level(m[0], best), u.level(m[0], worst), u.level(m[1], best),
                                          u.level(m[1], worst), top);
  const bool holds = r.holds(m[0], m[1]);
  if (w.property == "sufficiency") return expected && !holds;
  if (w.property == "necessity") return holds && !expected;
  const bool s_minus = u.in_b_minus(m[0]), s_plus = u.in_b_plus(m[0]);
  const bool t_minus = u.in_b_minus(m[1]), t_plus = u.in_b_plus(m[1]);
  if (w.property == "cross-half") {
    return holds != ((s_minus && t_minus && holds) || (s_plus && t_plus && holds) || (s_minus && t_plus));
  }
  if (w.property == "B- order") return s_minus && t_minus && holds != (u.level(m[0], worst) <= u.level(m[1], worst));
  if (w.property == "B+ order") return s_plus && t_plus && holds != (u.level(m[0], best) >= u.level(m[1], best));
  return false;
}

}  // namespace possibilistic
