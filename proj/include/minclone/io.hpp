// File formats and report serialization.
//
// Profiles and presentations are JSON documents with cardinal/ordinal
// literals as strings ("fin:3", "aleph(w+1)").  Structured reports are JSON
// with one entry per named condition, keyed by the condition names
// "mu","nu","sigma","rho","s'dec","n","epsilon","scont","chi","#epsilon",
// "lambda'".  Reports echo the canonicalized input profile so diffs are
// meaningful.

#ifndef MINCLONE_IO_HPP
#define MINCLONE_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "minclone/composition_bounds.hpp"
#include "minclone/concrete_function.hpp"
#include "minclone/minimality.hpp"

namespace minclone {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

inline json profile_to_json(const KernelProfile& p) {
  json segs = json::array();
  for (const Segment& s : p.segments)
    segs.push_back({{"lo", s.lo.to_string()},
                    {"hi", s.hi.to_string()},
                    {"value", s.value.to_string()}});
  return {{"kappa", p.kappa.to_string()},
          {"nu", p.nu.to_string()},
          {"segments", segs}};
}

inline KernelProfile profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kappa") || !j.contains("nu") ||
      !j.contains("segments"))
    throw std::invalid_argument(
        "profile must be an object with kappa, nu and segments");
  KernelProfile p;
  p.kappa = Cardinal::parse(j.at("kappa").get<std::string>());
  p.nu = Cardinal::parse(j.at("nu").get<std::string>());
  for (const json& s : j.at("segments")) {
    p.segments.push_back(
        Segment{Cardinal::parse(s.at("lo").get<std::string>()),
                Cardinal::parse(s.at("hi").get<std::string>()),
                Cardinal::parse(s.at("value").get<std::string>())});
  }
  return canonicalize(std::move(p));
}

inline KernelProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open profile file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("parse error in " + path + ": " + e.what());
  }
  return profile_from_json(j);
}

// ---------------------------------------------------------------------------
// Concrete-function presentations
// ---------------------------------------------------------------------------

inline json presentation_to_json(const ConcreteFunction& f) {
  json rules = json::array();
  for (std::uint64_t r = 0; r < f.modulus(); ++r) {
    const ResidueRule& rule = f.rules()[r];
    if (rule.kind == ResidueRule::Kind::Constant)
      rules.push_back(
          {{"residue", r}, {"kind", "constant"}, {"target", rule.target}});
    else
      rules.push_back({{"residue", r},
                       {"kind", "affine"},
                       {"base", rule.base},
                       {"stride", rule.stride}});
  }
  return {{"prefix", f.prefix()}, {"modulus", f.modulus()}, {"rules", rules}};
}

inline ConcreteFunction presentation_from_json(const json& j) {
  std::vector<std::uint64_t> prefix =
      j.at("prefix").get<std::vector<std::uint64_t>>();
  std::uint64_t modulus = j.at("modulus").get<std::uint64_t>();
  std::vector<ResidueRule> rules(modulus, ResidueRule::affine(0, 1));
  std::vector<bool> seen(modulus, false);
  for (const json& r : j.at("rules")) {
    std::uint64_t residue = r.at("residue").get<std::uint64_t>();
    if (residue >= modulus || seen[residue])
      throw std::invalid_argument("rules must cover each residue exactly once");
    seen[residue] = true;
    std::string kind = r.at("kind").get<std::string>();
    if (kind == "constant")
      rules[residue] = ResidueRule::constant(r.at("target").get<std::uint64_t>());
    else if (kind == "affine")
      rules[residue] = ResidueRule::affine(r.at("base").get<std::int64_t>(),
                                           r.at("stride").get<std::uint64_t>());
    else
      throw std::invalid_argument("rule kind must be constant or affine");
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("rules must cover all residues");
  return ConcreteFunction::make(std::move(prefix), modulus, std::move(rules));
}

inline ConcreteFunction load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open presentation file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("parse error in " + path + ": " + e.what());
  }
  return presentation_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json characteristic_to_json(const CharacteristicValues& cv) {
  return {{"mu", cv.mu.to_string()},
          {"sigma", cv.sigma.to_string()},
          {"rho", cv.rho.to_string()},
          {"nu", cv.nu.to_string()},
          {"epsilon", cv.epsilon.to_string()},
          {"epsilon'", cv.epsilon_prime.to_string()},
          {"lambda'", cv.lambda_prime.to_string()},
          {"chi", cv.chi.to_string()},
          {"epsilon_attained", cv.epsilon_attained},
          {"fragment_sup_semantics", cv.fragment_sup_semantics}};
}

inline json conditions_to_json(const ConditionReport& r) {
  json out;
  for (int i = 0; i < kConditionCount; ++i) {
    Condition c = static_cast<Condition>(i);
    json entry = {{"holds", r[c].holds}};
    if (!r[c].holds) entry["witness"] = r[c].witness;
    out[condition_key(c)] = entry;
  }
  return out;
}

inline json derived_to_json(const DerivedReport& d) {
  auto imp = [](const DerivedReport::Implication& i) {
    return json{{"antecedent", i.antecedent},
                {"consequent", i.consequent},
                {"holds", i.holds()}};
  };
  json out = {{"epsilonreg", d.eps_reg},
              {"kappa", d.kappa_cond},
              {"s'inf", d.s_inf},
              {"implication_epsilonreg", imp(d.from_sdec_scont_chi)},
              {"implication_kappa", imp(d.from_sigma_chi)},
              {"implication_s'inf", imp(d.from_nu_sdec_sharpe)}};
  if (d.chain_checked) out["chain_eps'_chi_eps_succ"] = d.chain_holds;
  return out;
}

inline json stepfn_to_json(const StepFn& fn, const Cardinal& below) {
  json out = json::array();
  for (const StepPiece& p : fn.pieces()) {
    if (!(p.lo < below)) continue;
    json piece = {{"lo", p.lo.to_string()},
                  {"hi", p.hi.to_string()},
                  {"hi_open", p.hi_open},
                  {"value_at_lo", p.value.to_string()}};
    if (p.step != 0) piece["step_per_successor"] = p.step;
    out.push_back(piece);
  }
  return out;
}

inline json clone_key_to_json(const CloneKey& k) {
  json strong = json::array();
  for (const auto& [xi, v] : k.strong_restriction)
    strong.push_back({{"xi", xi.to_string()}, {"value", v.to_string()}});
  return {{"mu", k.mu.to_string()},
          {"nu", k.nu.to_string()},
          {"s'", strong},
          {"chi", k.chi.to_string()},
          {"accumulated_below_chi", stepfn_to_json(k.accumulated_fn, k.chi)},
          {"epsilon", k.epsilon.to_string()},
          {"epsilon_attained", k.epsilon_attained}};
}

// Key components that distinguish two clone keys, by name.
inline std::vector<std::string> clone_key_differences(const CloneKey& a,
                                                      const CloneKey& b) {
  std::vector<std::string> out;
  if (!(a.mu == b.mu)) out.push_back("mu");
  if (!(a.nu == b.nu)) out.push_back("nu");
  if (a.strong_restriction != b.strong_restriction) out.push_back("s'");
  if (!(a.chi == b.chi)) out.push_back("chi");
  if (a.chi == b.chi && !a.accumulated_fn.equal_below(b.accumulated_fn, a.chi))
    out.push_back("accumulated");
  if (!(a.epsilon == b.epsilon)) out.push_back("epsilon");
  if (a.epsilon_attained != b.epsilon_attained) out.push_back("epsilon_attained");
  return out;
}

inline json boundset_to_json(const BoundSet& bs) {
  json queries = json::array();
  for (const QueryBounds& q : bs.queries) {
    json entry = {{"xi", q.xi.to_string()},
                  {"upper", q.upper_finite_marker ? std::string("finite")
                                                  : q.upper.to_string()},
                  {"upper_source", q.upper_source}};
    if (q.lower) {
      entry["lower"] = q.lower->to_string();
      entry["lower_source"] = q.lower_source;
    }
    queries.push_back(entry);
  }
  return {{"nu_lo", bs.nu_lo.to_string()},
          {"nu_hi", bs.nu_hi.to_string()},
          {"queries", queries}};
}

inline json violations_to_json(const std::vector<Violation>& vs) {
  json out = json::array();
  for (const Violation& v : vs) {
    json entry = {{"law", v.law}, {"detail", v.detail}};
    if (v.segment_index >= 0) entry["segment"] = v.segment_index;
    out.push_back(entry);
  }
  return out;
}

}  // namespace minclone

#endif  // MINCLONE_IO_HPP
