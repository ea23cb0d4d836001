#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "possibilistic/errors.hpp"
#include "possibilistic/lottery.hpp"
#include "possibilistic/scale.hpp"
#include "possibilistic/utility.hpp"

namespace possibilistic {

using Json = nlohmann::ordered_json;

/// A decision problem as read from a scenario file. Named decisions and
/// lotteries keep their declaration order.
struct Scenario {
  Scale v;
  std::optional<Scale> u;
  OutcomeSet outcomes;
  std::optional<StateSpace> states;
  std::optional<PossibilityDistribution> state_possibility;
  std::vector<std::pair<std::string, Decision>> decisions;
  std::vector<std::pair<std::string, PossibilityDistribution>> lotteries;
  std::optional<BasicUtilityAssessment> assessment;
  std::optional<PessOptConfig> pess_opt;

  /// Decisions (converted through the state distribution) then lotteries.
  std::vector<std::pair<std::string, PossibilityDistribution>> targets() const {
    std::vector<std::pair<std::string, PossibilityDistribution>> out;
    for (const auto& [name, d] : decisions) out.emplace_back(name, induced_distribution(*state_possibility, d));
    for (const auto& item : lotteries) out.push_back(item);
    return out;
  }
};

namespace detail {

/// Prefixes validation errors with the JSON path of the element being read.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ValidationError(path + ": " + what);
  }
}

inline const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ValidationError(path + ": missing field '" + key + "'");
  return obj.at(key);
}

inline std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path + ": expected a string, got " + std::string(j.type_name()));
  return j.get<std::string>();
}

inline std::vector<std::string> string_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::pair<std::string, std::string>> string_map(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, val] : j.items()) out.emplace_back(k, as_string(val, path + "." + k));
  return out;
}

inline Scale read_scale(const Json& j, const std::string& name, const std::string& path) {
  auto labels = string_array(j, path);
  return at_path(path, [&] { return Scale::from_labels(labels, name); });
}

inline OutcomeSet read_outcomes(const Json& j) {
  const std::string path = "outcomes";
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
  const LabelSet labels =
      at_path(path + ".labels", [&] { return LabelSet::make(string_array(field(j, "labels", path), path + ".labels"), "outcome"); });
  const std::string best = as_string(field(j, "best", path), path + ".best");
  const std::string worst = as_string(field(j, "worst", path), path + ".worst");
  std::vector<std::vector<std::string>> classes;
  if (j.contains("preference")) {
    const Json& p = j.at("preference");
    if (!p.is_array()) throw ValidationError(path + ".preference: expected an array of classes");
    for (std::size_t i = 0; i < p.size(); ++i) {
      classes.push_back(string_array(p[i], path + ".preference[" + std::to_string(i) + "]"));
    }
  } else {
    for (const auto& l : labels.labels()) classes.push_back({l});
  }
  return at_path(path, [&] { return OutcomeSet::make(labels, best, worst, classes); });
}

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace detail

/// Parses and validates a scenario document.
inline Scenario parse_scenario(const std::string& text) {
  using namespace detail;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::string what = e.what();
    const auto colon = what.find(": ", what.find("parse error"));
    throw ParseError("parse error at " + line_column(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                     (colon == std::string::npos ? what : what.substr(colon + 2)));
  }
  if (!doc.is_object()) throw ValidationError("scenario: top level must be an object");

  static const std::vector<std::string> known = {"scale_v",   "scale_u",   "outcomes",   "states",
                                                 "state_possibility", "decisions", "lotteries", "assessment",
                                                 "pessimistic_config"};
  for (const auto& [k, _] : doc.items()) {
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ValidationError("scenario: unknown field '" + k + "'");
  }

  Scale v = read_scale(field(doc, "scale_v", "scenario"), "V", "scale_v");
  std::optional<Scale> u;
  if (doc.contains("scale_u")) u = read_scale(doc.at("scale_u"), "U", "scale_u");
  OutcomeSet outcomes = read_outcomes(field(doc, "outcomes", "scenario"));
  Scenario s{v, u, outcomes, std::nullopt, std::nullopt, {}, {}, std::nullopt, std::nullopt};
  const LabelSet& labels = outcomes.labels();

  if (doc.contains("states")) {
    s.states = at_path("states", [&] { return StateSpace::make(string_array(doc.at("states"), "states")); });
  }
  if (doc.contains("state_possibility")) {
    if (!s.states) throw ValidationError("state_possibility: requires 'states'");
    auto entries = string_map(doc.at("state_possibility"), "state_possibility");
    s.state_possibility = at_path("state_possibility", [&] { return make_distribution(s.states->labels(), v, entries); });
  }
  if (doc.contains("decisions")) {
    if (!s.states || !s.state_possibility) throw ValidationError("decisions: require 'states' and 'state_possibility'");
    const Json& d = doc.at("decisions");
    if (!d.is_object()) throw ValidationError("decisions: expected an object");
    for (const auto& [name, body] : d.items()) {
      const std::string path = "decisions." + name;
      auto entries = string_map(body, path);
      s.decisions.emplace_back(name, at_path(path, [&] { return Decision::from_labels(*s.states, labels, entries); }));
    }
  }
  if (doc.contains("lotteries")) {
    const Json& l = doc.at("lotteries");
    if (!l.is_object()) throw ValidationError("lotteries: expected an object");
    for (const auto& [name, body] : l.items()) {
      const std::string path = "lotteries." + name;
      auto entries = string_map(body, path);
      // Omitted outcomes get 0.
      for (const auto& label : labels.labels()) {
        if (!body.contains(label)) entries.emplace_back(label, "0");
      }
      s.lotteries.emplace_back(name, at_path(path, [&] { return make_distribution(labels, v, entries); }));
    }
  }
  if (doc.contains("assessment")) {
    const Json& a = doc.at("assessment");
    if (!a.is_object()) throw ValidationError("assessment: expected an object");
    std::vector<std::optional<BinaryUtility>> slots(labels.size());
    for (const auto& [label, pair] : a.items()) {
      const std::string path = "assessment." + label;
      const std::size_t x = at_path(path, [&] { return labels.require_index(label); });
      auto parts = string_array(pair, path);
      if (parts.size() != 2) throw ValidationError(path + ": expected [λ, μ]");
      slots[x] = at_path(path, [&] { return BinaryUtility::make(v.parse(parts[0]), v.parse(parts[1])); });
    }
    std::vector<BinaryUtility> utility;
    for (std::size_t x = 0; x < slots.size(); ++x) {
      if (!slots[x]) throw ValidationError("assessment: missing outcome '" + labels.label(x) + "'");
      utility.push_back(*slots[x]);
    }
    s.assessment = at_path("assessment", [&] {
      return BasicUtilityAssessment(outcomes, v, utility, infer_anchoring(outcomes, utility));
    });
  }
  if (doc.contains("pessimistic_config")) {
    const std::string path = "pessimistic_config";
    if (!u) throw ValidationError(path + ": requires 'scale_u'");
    const Json& c = doc.at(path);
    if (!c.is_object()) throw ValidationError(path + ": expected an object");
    auto u_entries = string_map(field(c, "u", path), path + ".u");
    std::vector<std::optional<Level>> slots(labels.size());
    for (const auto& [label, level] : u_entries) {
      const std::size_t x = at_path(path + ".u." + label, [&] { return labels.require_index(label); });
      slots[x] = at_path(path + ".u." + label, [&] { return u->parse(level); });
    }
    std::vector<Level> utility;
    for (std::size_t x = 0; x < slots.size(); ++x) {
      if (!slots[x]) throw ValidationError(path + ".u: missing outcome '" + labels.label(x) + "'");
      utility.push_back(*slots[x]);
    }
    auto n_entries = string_map(field(c, "n", path), path + ".n");
    auto h_entries = string_map(field(c, "h", path), path + ".h");
    Involution n = at_path(path + ".n", [&] { return Involution::from_labels(*u, n_entries); });
    ScaleMap h = at_path(path + ".h", [&] { return ScaleMap::from_labels(v, *u, h_entries); });
    s.pess_opt = at_path(path, [&] { return PessOptConfig(outcomes, v, *u, utility, n, h); });
  }
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

/// Canonical JSON form; parse_scenario(to_json(s).dump()) reproduces s.
inline Json to_json(const Scenario& s) {
  Json doc;
  doc["scale_v"] = s.v.labels();
  if (s.u) doc["scale_u"] = s.u->labels();
  const LabelSet& labels = s.outcomes.labels();
  doc["outcomes"] = {{"labels", labels.labels()},
                     {"best", labels.label(s.outcomes.best())},
                     {"worst", labels.label(s.outcomes.worst())},
                     {"preference", s.outcomes.classes()}};
  auto dist = [](const PossibilityDistribution& pi) {
    Json j = Json::object();
    for (std::size_t i = 0; i < pi.size(); ++i) j[pi.domain().label(i)] = pi.scale().label(pi[i]);
    return j;
  };
  if (s.states) doc["states"] = s.states->labels().labels();
  if (s.state_possibility) doc["state_possibility"] = dist(*s.state_possibility);
  if (!s.decisions.empty()) {
    Json d = Json::object();
    for (const auto& [name, dec] : s.decisions) {
      Json m = Json::object();
      for (std::size_t i = 0; i < dec.map().size(); ++i) m[dec.states().labels().label(i)] = labels.label(dec.map()[i]);
      d[name] = m;
    }
    doc["decisions"] = d;
  }
  if (!s.lotteries.empty()) {
    Json l = Json::object();
    for (const auto& [name, pi] : s.lotteries) l[name] = dist(pi);
    doc["lotteries"] = l;
  }
  if (s.assessment) {
    Json a = Json::object();
    for (std::size_t x = 0; x < labels.size(); ++x) {
      const auto& b = s.assessment->utility(x);
      a[labels.label(x)] = {s.v.label(b.lambda()), s.v.label(b.mu())};
    }
    doc["assessment"] = a;
  }
  if (s.pess_opt) {
    const auto& c = *s.pess_opt;
    Json u = Json::object(), n = Json::object(), h = Json::object();
    for (std::size_t x = 0; x < labels.size(); ++x) u[labels.label(x)] = c.u_scale().label(c.utility(x));
    for (const Level& l : c.u_scale().levels()) n[c.u_scale().label(l)] = c.u_scale().label(c.n()(l));
    for (const Level& l : c.v().levels()) h[c.v().label(l)] = c.u_scale().label(c.h()(l));
    doc["pessimistic_config"] = {{"u", u}, {"n", n}, {"h", h}};
  }
  return doc;
}

/// Structural equality through the canonical form; scale identities are ignored.
inline bool same_scenario(const Scenario& a, const Scenario& b) { return to_json(a) == to_json(b); }

}  // namespace possibilistic
