// Decision procedures on kernel profiles: the eleven-condition minimality
// check, the derived conditions and their sufficiency implications, clone
// keys and clone equality, the clone count, and the countable-case
// classification.

#ifndef MINCLONE_MINIMALITY_HPP
#define MINCLONE_MINIMALITY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "minclone/kernel_profile.hpp"

namespace minclone {

enum class Condition : int {
  Mu = 0,        // mu = 1 or infinite
  Nu,            // mu finite  =>  nu infinite or zero
  Sigma,         // s(mu) = kappa
  Rho,           // s(> mu) < kappa
  SPrimeDec,     // restriction to the strong support strictly decreasing
  FiniteN,       // no finite n > 1 in the strong support
  Epsilon,       // epsilon = 1 or infinite
  SCont,         // no drops of s(>= .) at singular or finite>2 points <= chi
  Chi,           // epsilon <= nu  =>  s(>= chi) finite
  SharpEpsilon,  // epsilon > nu   =>  s(epsilon) infinite
  LambdaPrime,   // epsilon > nu   =>  s vanishes on (lambda', nu]
};

inline constexpr int kConditionCount = 11;

inline const char* condition_key(Condition c) {
  switch (c) {
    case Condition::Mu: return "mu";
    case Condition::Nu: return "nu";
    case Condition::Sigma: return "sigma";
    case Condition::Rho: return "rho";
    case Condition::SPrimeDec: return "s'dec";
    case Condition::FiniteN: return "n";
    case Condition::Epsilon: return "epsilon";
    case Condition::SCont: return "scont";
    case Condition::Chi: return "chi";
    case Condition::SharpEpsilon: return "#epsilon";
    case Condition::LambdaPrime: return "lambda'";
  }
  return "?";
}

struct ConditionEntry {
  bool holds = true;
  std::string witness;  // offending cardinal or segment when holds == false
};

struct ConditionReport {
  CharacteristicValues values;
  std::array<ConditionEntry, kConditionCount> entries;

  const ConditionEntry& operator[](Condition c) const {
    return entries[static_cast<int>(c)];
  }
  ConditionEntry& operator[](Condition c) {
    return entries[static_cast<int>(c)];
  }
  bool all_hold() const {
    for (const auto& e : entries)
      if (!e.holds) return false;
    return true;
  }
};

inline bool is_permutation_shape(const KernelProfile& p) {
  return p.segments.size() == 1 && p.segments[0].lo == Cardinal::finite(1) &&
         p.segments[0].hi == Cardinal::finite(1) && p.nu.is_zero();
}

inline bool is_constant_shape(const KernelProfile& p) {
  return p.segments.size() == 1 && p.segments[0].lo == p.kappa &&
         p.segments[0].hi == p.kappa &&
         p.segments[0].value == Cardinal::finite(1);
}

namespace detail {

// Scans the accumulated sequence for drop points t with 2 < t <= chi that
// are finite or singular.  s(>= .) may step down at every successor inside a
// finite segment, so arithmetic runs are inspected as ranges, not just at
// piece boundaries.
inline std::optional<Cardinal> scont_offender(const StepFn& acc,
                                              const Cardinal& chi) {
  std::optional<Cardinal> prev;
  const Cardinal two = Cardinal::finite(2);
  for (const StepPiece& pc : acc.pieces()) {
    if (chi < pc.lo) break;
    if (prev && pc.value_at(pc.lo) < *prev && two < pc.lo) {
      if (pc.lo.is_finite() || !is_regular(pc.lo)) return pc.lo;
    }
    if (pc.step > 0) {
      Cardinal first = card_max(card_succ(pc.lo), Cardinal::finite(3));
      Cardinal last = card_min(pc.hi, chi);
      if (!(last < first)) return first;
    }
    prev = pc.value_at_top();
  }
  return std::nullopt;
}

// Cross-check: the piece description must agree with direct segment
// summation at every claimed breakpoint.  A mismatch is an engine bug.
inline void verify_accumulated(const KernelProfile& p, const StepFn& acc) {
  for (const StepPiece& pc : acc.pieces()) {
    if (!(acc.value_at(pc.lo) == sum_range(p, pc.lo, p.kappa)))
      throw std::logic_error("accumulated sequence disagrees with direct sum at " +
                             pc.lo.to_string());
    if (pc.step > 0 && !(pc.value_at(pc.hi) == sum_range(p, pc.hi, p.kappa)))
      throw std::logic_error("accumulated sequence disagrees with direct sum at " +
                             pc.hi.to_string());
  }
}

}  // namespace detail

namespace detail {
inline ConditionReport evaluate_conditions(const KernelProfile& p);
}

// Evaluates the eleven conditions on a valid, non-permutation profile.
inline ConditionReport check_conditions(const KernelProfile& p) {
  if (is_permutation_shape(p))
    throw std::invalid_argument("check_conditions: permutation profile");
  return detail::evaluate_conditions(p);
}

namespace detail {
inline ConditionReport evaluate_conditions(const KernelProfile& p) {
  ConditionReport r;
  r.values = characteristic_values(p);
  const CharacteristicValues& cv = r.values;
  SupportSplit split = support_split(p);
  StepFn acc = accumulated(p);
  detail::verify_accumulated(p, acc);

  auto fail = [&r](Condition c, std::string witness) {
    r[c].holds = false;
    r[c].witness = std::move(witness);
  };

  if (!(cv.mu == Cardinal::finite(1) || cv.mu.is_infinite()))
    fail(Condition::Mu, "mu = " + cv.mu.to_string());
  if (cv.mu.is_finite() && !(cv.nu.is_zero() || cv.nu.is_infinite()))
    fail(Condition::Nu, "nu = " + cv.nu.to_string());
  if (!(cv.sigma == p.kappa))
    fail(Condition::Sigma, "s(mu) = " + cv.sigma.to_string());
  if (!(cv.rho < p.kappa))
    fail(Condition::Rho, "s(>mu) = " + cv.rho.to_string());

  for (std::size_t i = 0; i < split.strong.size(); ++i) {
    const Segment& s = split.strong[i];
    if (s.lo < s.hi) {
      fail(Condition::SPrimeDec,
           "constant on [" + s.lo.to_string() + ", " + s.hi.to_string() + "]");
      break;
    }
    if (i > 0 && !(s.value < split.strong[i - 1].value)) {
      fail(Condition::SPrimeDec, "no strict decrease at " + s.lo.to_string());
      break;
    }
  }
  for (const Segment& s : split.strong) {
    if (!s.lo.is_finite()) continue;
    Cardinal n = card_max(s.lo, Cardinal::finite(2));  // least finite member > 1
    if (!(s.hi < n)) {
      fail(Condition::FiniteN, "finite " + n.to_string() + " in strong support");
      break;
    }
  }

  if (!(cv.epsilon == Cardinal::finite(1) || cv.epsilon.is_infinite()))
    fail(Condition::Epsilon, "epsilon = " + cv.epsilon.to_string());

  if (auto t = detail::scont_offender(acc, cv.chi))
    fail(Condition::SCont,
         (t->is_finite() ? "finite drop at " : "singular drop at ") +
             t->to_string());

  if (!(cv.nu < cv.epsilon)) {
    if (!acc.value_at(cv.chi).is_finite())
      fail(Condition::Chi, "s(>=chi) = " + acc.value_at(cv.chi).to_string());
  } else {
    if (!eval(p, cv.epsilon).is_infinite())
      fail(Condition::SharpEpsilon,
           "s(epsilon) = " + eval(p, cv.epsilon).to_string());
    Cardinal gap = sum_range(p, cv.lambda_prime, cv.nu, /*lo_strict=*/true);
    if (!gap.is_zero())
      fail(Condition::LambdaPrime,
           "support in (lambda', nu], total " + gap.to_string());
  }
  return r;
}
}  // namespace detail

enum class VerdictKind {
  MinimalConstant,
  MinimalNonconstant,
  NotMinimal,
  NotApplicablePermutation,
  NotApplicableInvalid,
};

struct Verdict {
  VerdictKind kind;
  std::optional<ConditionReport> report;  // present for Minimal*/NotMinimal of nonconstant
  std::vector<Violation> violations;      // present for invalid input

  bool minimal() const {
    return kind == VerdictKind::MinimalConstant ||
           kind == VerdictKind::MinimalNonconstant;
  }
};

inline const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::MinimalConstant: return "MinimalConstant";
    case VerdictKind::MinimalNonconstant: return "MinimalNonconstant";
    case VerdictKind::NotMinimal: return "NotMinimal";
    case VerdictKind::NotApplicablePermutation: return "NotApplicable(permutation)";
    case VerdictKind::NotApplicableInvalid: return "NotApplicable(invalid profile)";
  }
  return "?";
}

inline Verdict is_s_minimal(KernelProfile p) {
  p = canonicalize(std::move(p));
  Verdict v;
  v.violations = validate(p);
  if (!v.violations.empty()) {
    v.kind = VerdictKind::NotApplicableInvalid;
    return v;
  }
  if (is_constant_shape(p)) {
    v.kind = VerdictKind::MinimalConstant;
    return v;
  }
  if (is_permutation_shape(p)) {
    v.kind = VerdictKind::NotApplicablePermutation;
    return v;
  }
  v.report = check_conditions(p);
  v.kind = v.report->all_hold() ? VerdictKind::MinimalNonconstant
                                : VerdictKind::NotMinimal;
  return v;
}

// ---------------------------------------------------------------------------
// Derived conditions
// ---------------------------------------------------------------------------

struct DerivedReport {
  bool eps_reg;     // s(epsilon) > 0 or epsilon regular
  bool kappa_cond;  // nu = kappa  =>  s(kappa) = 0
  bool s_inf;       // s infinite on the whole strong support

  struct Implication {
    bool antecedent;
    bool consequent;
    bool holds() const { return !antecedent || consequent; }
  };
  Implication from_sdec_scont_chi;  // => eps_reg
  Implication from_sigma_chi;       // => kappa_cond
  Implication from_nu_sdec_sharpe;  // => s_inf
  // epsilon' < chi <= epsilon^+ whenever (sigma) and (chi) hold and
  // epsilon <= nu (the case in which chi matters at all)
  bool chain_checked = false;
  bool chain_holds = true;

  bool implications_hold() const {
    return from_sdec_scont_chi.holds() && from_sigma_chi.holds() &&
           from_nu_sdec_sharpe.holds();
  }
};

inline DerivedReport derived_check(KernelProfile p) {
  p = canonicalize(std::move(p));
  if (auto viols = validate(p); !viols.empty())
    throw std::invalid_argument("derived_check: invalid profile: " +
                                viols.front().law + ": " + viols.front().detail);
  ConditionReport r = detail::evaluate_conditions(p);
  const CharacteristicValues& cv = r.values;
  SupportSplit split = support_split(p);
  DerivedReport d;

  d.eps_reg = !eval(p, cv.epsilon).is_zero() ||
              (cv.epsilon.is_infinite() && is_regular(cv.epsilon));
  d.kappa_cond = !(p.nu == p.kappa) || eval(p, p.kappa).is_zero();
  d.s_inf = true;
  for (const Segment& s : split.strong)
    if (!s.value.is_infinite()) d.s_inf = false;

  d.from_sdec_scont_chi = {r[Condition::SPrimeDec].holds &&
                               r[Condition::SCont].holds &&
                               r[Condition::Chi].holds,
                           d.eps_reg};
  d.from_sigma_chi = {r[Condition::Sigma].holds && r[Condition::Chi].holds,
                      d.kappa_cond};
  d.from_nu_sdec_sharpe = {r[Condition::Nu].holds &&
                               r[Condition::SPrimeDec].holds &&
                               r[Condition::SharpEpsilon].holds,
                           d.s_inf};
  if (r[Condition::Sigma].holds && r[Condition::Chi].holds &&
      !(cv.nu < cv.epsilon)) {
    d.chain_checked = true;
    d.chain_holds =
        cv.epsilon_prime < cv.chi && !(card_succ(cv.epsilon) < cv.chi);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Clone keys
// ---------------------------------------------------------------------------

struct CloneKey {
  Cardinal kappa;  // not a key datum; guards against cross-base comparison
  Cardinal mu;
  Cardinal nu;
  std::vector<std::pair<Cardinal, Cardinal>> strong_restriction;  // (xi, s(xi))
  Cardinal chi;
  StepFn accumulated_fn;  // compared strictly below chi
  Cardinal epsilon;
  bool epsilon_attained;
};

inline CloneKey clone_key(KernelProfile p) {
  p = canonicalize(std::move(p));
  Verdict v = is_s_minimal(p);
  if (!v.minimal())
    throw std::invalid_argument("key defined only for S-minimal profiles");
  CharacteristicValues cv = characteristic_values(p);
  CloneKey k;
  k.kappa = p.kappa;
  k.mu = cv.mu;
  k.nu = cv.nu;
  for (const Segment& s : support_split(p).strong) {
    if (!(s.lo == s.hi))
      throw std::logic_error("minimal profile with a wide strong segment");
    k.strong_restriction.emplace_back(s.lo, s.value);
  }
  k.chi = cv.chi;
  k.accumulated_fn = accumulated(p);
  k.epsilon = cv.epsilon;
  k.epsilon_attained = cv.epsilon_attained;
  return k;
}

inline bool same_clone_key(const CloneKey& a, const CloneKey& b) {
  if (!(a.kappa == b.kappa))
    throw std::invalid_argument("clone keys live on different base sets");
  return a.mu == b.mu && a.nu == b.nu &&
         a.strong_restriction == b.strong_restriction && a.chi == b.chi &&
         a.epsilon == b.epsilon && a.epsilon_attained == b.epsilon_attained &&
         a.accumulated_fn.equal_below(b.accumulated_fn, a.chi);
}

inline bool same_clone(const KernelProfile& p, const KernelProfile& q) {
  return same_clone_key(clone_key(p), clone_key(q));
}

// ---------------------------------------------------------------------------
// Counting and the countable case
// ---------------------------------------------------------------------------

// Number of minimal clones above the permutations on a set of size
// aleph(alpha): max{|alpha|, aleph_0}.
inline Cardinal count_minimal_clones(const Cardinal& kappa) {
  if (kappa.is_finite())
    throw std::invalid_argument("count defined for infinite kappa only");
  const Ordinal& alpha = kappa.aleph_index();
  Cardinal alpha_size = alpha.is_finite() ? Cardinal::finite(alpha.finite_value())
                                          : Cardinal::aleph0();
  return card_max(alpha_size, Cardinal::aleph0());
}

// A witness family separating clones by their co-range size: mu = kappa,
// s(kappa) = kappa, nu as given.  Distinct nu yield distinct clone keys.
inline KernelProfile witness_profile(const Cardinal& kappa, const Cardinal& nu) {
  if (!(nu < kappa))
    throw std::invalid_argument("witness_profile requires nu < kappa");
  KernelProfile p{kappa, nu, {Segment{kappa, kappa, kappa}}};
  if (is_s_minimal(p).kind != VerdictKind::MinimalNonconstant)
    throw std::logic_error("witness profile failed its own minimality check");
  return p;
}

enum class CountableFamily { I, H, Const, NotMinimal };

struct Classification {
  CountableFamily family;
  Cardinal nu;  // the nu of an I-family profile

  std::string to_string() const {
    switch (family) {
      case CountableFamily::I: return "I(" + nu.to_string() + ")";
      case CountableFamily::H: return "H";
      case CountableFamily::Const: return "Const";
      case CountableFamily::NotMinimal: return "NotMinimal";
    }
    return "?";
  }
};

// Structural classification of the countable case, independent of the
// condition checker: I(nu) when all classes are infinite and nu is finite,
// H for injective with infinite co-range, Const for the constant shape.
inline Classification countable_classify(KernelProfile p) {
  p = canonicalize(std::move(p));
  if (!(p.kappa == Cardinal::aleph0()))
    throw std::invalid_argument("countable_classify requires kappa = aleph_0");
  auto viols = validate(p);
  if (!viols.empty())
    throw std::invalid_argument("countable_classify: invalid profile: " +
                                viols.front().law + ": " + viols.front().detail);
  Classification c{CountableFamily::NotMinimal, p.nu};
  if (is_constant_shape(p)) {
    c.family = CountableFamily::Const;
  } else if (p.segments.front().lo == Cardinal::aleph0() && p.nu.is_finite()) {
    c.family = CountableFamily::I;
  } else if (p.segments.back().hi == Cardinal::finite(1) &&
             p.nu == Cardinal::aleph0()) {
    c.family = CountableFamily::H;
  }
  bool tagged = c.family != CountableFamily::NotMinimal;
  if (tagged != is_s_minimal(p).minimal())
    throw std::logic_error("countable classification disagrees with the condition checker");
  return c;
}

}  // namespace minclone

#endif  // MINCLONE_MINIMALITY_HPP
