// Eventually quasi-affine self-maps of the naturals: a finite explicit
// prefix, then one rule per residue class mod k.  A Constant rule sends its
// whole class to one target; an Affine rule enumerates an arithmetic
// progression injectively,
//
//     f(n) = base + stride * ((n - r) / k)      for n >= N, n = r (mod k).
//
// The formula is anchored at the class origin r, not at the prefix end, so
// growing or trimming the prefix never re-bases a rule; base may be negative
// as long as every applicable value is a natural.
//
// The class is closed under composition, every member has a computable exact
// kernel profile over {finite sizes, aleph_0}, and bijections in the class
// are recognizable.  That is everything the desk-scale oracle needs.  Class
// sizes are bounded by the rule structure: only constant rules produce
// infinite classes, so s(aleph_0) is always finite here (at most k).

#ifndef MINCLONE_CONCRETE_FUNCTION_HPP
#define MINCLONE_CONCRETE_FUNCTION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "minclone/kernel_profile.hpp"

namespace minclone {

struct ResidueRule {
  enum class Kind { Constant, Affine } kind;
  std::uint64_t target = 0;  // Constant
  std::int64_t base = 0;     // Affine: value at the virtual point n = r
  std::uint64_t stride = 1;  // Affine: >= 1

  static ResidueRule constant(std::uint64_t t) {
    return {Kind::Constant, t, 0, 1};
  }
  static ResidueRule affine(std::int64_t base, std::uint64_t stride) {
    return {Kind::Affine, 0, base, stride};
  }
  friend bool operator==(const ResidueRule& a, const ResidueRule& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Constant) return a.target == b.target;
    return a.base == b.base && a.stride == b.stride;
  }
};

namespace detail {
inline std::uint64_t ceil_div_nonneg(std::int64_t num, std::uint64_t den) {
  if (num <= 0) return 0;
  return (static_cast<std::uint64_t>(num) + den - 1) / den;
}
inline std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) {
  return a / std::gcd(a, b) * b;
}
}  // namespace detail

class ConcreteFunction {
 public:
  ConcreteFunction() : modulus_(1), rules_{ResidueRule::affine(0, 1)} {}

  static ConcreteFunction identity() { return ConcreteFunction(); }

  static ConcreteFunction make(std::vector<std::uint64_t> prefix,
                               std::uint64_t modulus,
                               std::vector<ResidueRule> rules) {
    if (modulus == 0 || rules.size() != modulus)
      throw std::invalid_argument("rules must cover all residues mod k");
    ConcreteFunction f;
    f.prefix_ = std::move(prefix);
    f.modulus_ = modulus;
    f.rules_ = std::move(rules);
    for (std::uint64_t r = 0; r < modulus; ++r) {
      const ResidueRule& rule = f.rules_[r];
      if (rule.kind == ResidueRule::Kind::Affine) {
        if (rule.stride == 0)
          throw std::invalid_argument("affine stride must be >= 1");
        std::uint64_t n0 = f.first_applicable(r);
        if (f.rule_value_at(r, n0) < 0)
          throw std::invalid_argument("affine rule value negative at n=" +
                                      std::to_string(n0));
      }
    }
    return f;
  }

  const std::vector<std::uint64_t>& prefix() const { return prefix_; }
  std::uint64_t prefix_size() const { return prefix_.size(); }
  std::uint64_t modulus() const { return modulus_; }
  const std::vector<ResidueRule>& rules() const { return rules_; }

  std::uint64_t apply(std::uint64_t n) const {
    if (n < prefix_.size()) return prefix_[n];
    std::uint64_t r = n % modulus_;
    const ResidueRule& rule = rules_[r];
    if (rule.kind == ResidueRule::Kind::Constant) return rule.target;
    std::int64_t v = rule_value_at(r, n);
    return static_cast<std::uint64_t>(v);
  }

  friend bool operator==(const ConcreteFunction& a, const ConcreteFunction& b) {
    return a.prefix_ == b.prefix_ && a.modulus_ == b.modulus_ &&
           a.rules_ == b.rules_;
  }

  // First n >= prefix end in residue class r.
  std::uint64_t first_applicable(std::uint64_t r) const {
    std::uint64_t n = prefix_.size();
    std::uint64_t rem = n % modulus_;
    return rem <= r ? n + (r - rem) : n + modulus_ - rem + r;
  }

  // Smallest value the affine rule for r actually produces.
  std::uint64_t rule_start_value(std::uint64_t r) const {
    return static_cast<std::uint64_t>(rule_value_at(r, first_applicable(r)));
  }

  // ---------------------------------------------------------------------
  // Composition: (outer o inner)(n) = outer(inner(n)), exact and closed.
  // ---------------------------------------------------------------------
  static ConcreteFunction compose(const ConcreteFunction& outer,
                                  const ConcreteFunction& inner);

  ConcreteFunction normalized() const;

 private:
  std::int64_t rule_value_at(std::uint64_t r, std::uint64_t n) const {
    const ResidueRule& rule = rules_[r];
    std::uint64_t j = (n - r) / modulus_;
    return rule.base + static_cast<std::int64_t>(rule.stride * j);
  }

  std::vector<std::uint64_t> prefix_;
  std::uint64_t modulus_;
  std::vector<ResidueRule> rules_;
};

// Positive remainder of a possibly negative anchor value.
inline std::uint64_t mod_floor(std::int64_t v, std::uint64_t m) {
  std::int64_t mm = static_cast<std::int64_t>(m);
  std::int64_t r = v % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

inline ConcreteFunction ConcreteFunction::compose(const ConcreteFunction& outer,
                                                  const ConcreteFunction& inner) {
  const std::uint64_t kg = inner.modulus_, kf = outer.modulus_;
  const std::uint64_t K = kg * kf;
  const std::uint64_t Nf = outer.prefix_.size();
  std::vector<ResidueRule> rules(K);
  std::vector<std::uint64_t> start(K, 0);  // first n the class rule is exact at

  for (std::uint64_t R = 0; R < K; ++R) {
    std::uint64_t r = R % kg;
    const ResidueRule& in = inner.rules_[r];
    std::uint64_t n_inner_ok = std::max(R, inner.prefix_size() == 0
                                               ? R
                                               : inner.first_applicable(r));
    // round up to the R-class
    if (n_inner_ok > R)
      n_inner_ok = R + ((n_inner_ok - R + K - 1) / K) * K;
    if (in.kind == ResidueRule::Kind::Constant) {
      rules[R] = ResidueRule::constant(outer.apply(in.target));
      start[R] = n_inner_ok;
      continue;
    }
    // inner value on the R-class: m(t) = m0 + ms * t for n = R + K*t
    std::uint64_t j0 = (R - r) / kg;
    std::int64_t m0 = in.base + static_cast<std::int64_t>(in.stride * j0);
    std::uint64_t ms = in.stride * kf;
    std::uint64_t rho = mod_floor(m0, kf);
    const ResidueRule& out = outer.rules_[rho];
    // outer must see values past its own prefix
    std::uint64_t t_outer =
        detail::ceil_div_nonneg(static_cast<std::int64_t>(Nf) - m0, ms);
    std::uint64_t n_ok = std::max(n_inner_ok, R + K * t_outer);
    if (out.kind == ResidueRule::Kind::Constant) {
      rules[R] = ResidueRule::constant(out.target);
      start[R] = n_ok;
    } else {
      // value(t) = out.base + out.stride * ((m0 + ms*t - rho)/kf)
      std::int64_t q0 = (m0 - static_cast<std::int64_t>(rho)) /
                        static_cast<std::int64_t>(kf);
      std::int64_t B = out.base + static_cast<std::int64_t>(out.stride) * q0;
      std::uint64_t S = out.stride * in.stride;
      // re-anchor from t=0 at n=R to the class origin (they coincide: n=R)
      rules[R] = ResidueRule::affine(B, S);
      start[R] = n_ok;
    }
  }
  std::uint64_t N = inner.prefix_size();
  for (std::uint64_t R = 0; R < K; ++R) N = std::max(N, start[R]);
  std::vector<std::uint64_t> prefix(N);
  for (std::uint64_t n = 0; n < N; ++n)
    prefix[n] = outer.apply(inner.apply(n));
  ConcreteFunction h = make(std::move(prefix), K, std::move(rules));
  return h.normalized();
}

inline ConcreteFunction ConcreteFunction::normalized() const {
  // 1. Reduce the modulus to the smallest divisor under which the rules
  //    merge into consistent per-class rules.
  std::uint64_t k = modulus_;
  std::uint64_t best = k;
  for (std::uint64_t d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    bool ok = true;
    for (std::uint64_t rp = 0; rp < d && ok; ++rp) {
      const ResidueRule& head = rules_[rp];
      if (head.kind == ResidueRule::Kind::Affine &&
          (head.stride * d) % k != 0) {
        ok = false;
        break;
      }
      std::uint64_t merged_stride =
          head.kind == ResidueRule::Kind::Affine ? head.stride * d / k : 0;
      for (std::uint64_t r = rp; r < k && ok; r += d) {
        const ResidueRule& rule = rules_[r];
        if (rule.kind != head.kind) ok = false;
        else if (rule.kind == ResidueRule::Kind::Constant) {
          if (rule.target != head.target) ok = false;
        } else {
          // merged value(n) = B' + S'*((n - rp)/d); sub-class r demands
          // stride equality and base alignment at offset i = (r - rp)/d.
          if (rule.stride != head.stride) ok = false;
          else {
            std::uint64_t i = (r - rp) / d;
            std::int64_t expect =
                head.base + static_cast<std::int64_t>(merged_stride * i);
            if (rule.base != expect) ok = false;
          }
        }
      }
    }
    if (ok) {
      best = d;
      break;
    }
  }
  ConcreteFunction out;
  out.prefix_ = prefix_;
  out.modulus_ = best;
  out.rules_.resize(best);
  for (std::uint64_t rp = 0; rp < best; ++rp) {
    const ResidueRule& head = rules_[rp];
    if (head.kind == ResidueRule::Kind::Constant)
      out.rules_[rp] = head;
    else
      out.rules_[rp] = ResidueRule::affine(head.base, head.stride * best / k);
  }
  // 2. Trim prefix entries the rules already predict.
  while (!out.prefix_.empty()) {
    std::uint64_t n = out.prefix_.size() - 1;
    std::uint64_t r = n % out.modulus_;
    const ResidueRule& rule = out.rules_[r];
    std::uint64_t predicted;
    if (rule.kind == ResidueRule::Kind::Constant) {
      predicted = rule.target;
    } else {
      std::int64_t v = rule.base + static_cast<std::int64_t>(
                                       rule.stride * ((n - r) / out.modulus_));
      if (v < 0) break;
      predicted = static_cast<std::uint64_t>(v);
    }
    if (predicted != out.prefix_.back()) break;
    out.prefix_.pop_back();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact kernel analysis
// ---------------------------------------------------------------------------

// Class sizes on the target side: explicit below `bound`, periodic with
// period `period` at and above it (where the only contributions are affine
// rule hits, one per covering rule).
struct TargetAnalysis {
  std::uint64_t bound;
  std::vector<std::uint64_t> explicit_size;  // size per y < bound; UINT64_MAX = infinite
  std::uint64_t period;
  std::vector<std::uint64_t> residue_count;  // size per residue class, y >= bound

  static constexpr std::uint64_t kInfinite = UINT64_MAX;

  bool infinite_class(std::uint64_t y) const {
    return y < bound && explicit_size[y] == kInfinite;
  }
  std::uint64_t size_of(std::uint64_t y) const {  // finite sizes only
    if (y < bound) return explicit_size[y];
    return residue_count[y % period];
  }
};

inline TargetAnalysis analyze_targets(const ConcreteFunction& f) {
  TargetAnalysis ta;
  std::uint64_t L = 1;
  std::uint64_t hi = 0;
  for (std::uint64_t v : f.prefix()) hi = std::max(hi, v + 1);
  for (std::uint64_t r = 0; r < f.modulus(); ++r) {
    const ResidueRule& rule = f.rules()[r];
    if (rule.kind == ResidueRule::Kind::Constant) {
      hi = std::max(hi, rule.target + 1);
    } else {
      L = detail::lcm64(L, rule.stride);
      hi = std::max(hi, f.rule_start_value(r) + 1);
      if (L > (1u << 22))
        throw std::logic_error("stride structure too large to analyze");
    }
  }
  ta.bound = hi;
  ta.period = L;
  ta.explicit_size.assign(hi, 0);
  for (std::uint64_t v : f.prefix())
    if (ta.explicit_size[v] != TargetAnalysis::kInfinite) ++ta.explicit_size[v];
  for (std::uint64_t r = 0; r < f.modulus(); ++r) {
    const ResidueRule& rule = f.rules()[r];
    if (rule.kind == ResidueRule::Kind::Constant) {
      ta.explicit_size[rule.target] = TargetAnalysis::kInfinite;
      continue;
    }
    // hits below the bound, one per progression point
    std::uint64_t v = f.rule_start_value(r);
    for (; v < hi; v += rule.stride)
      if (ta.explicit_size[v] != TargetAnalysis::kInfinite)
        ++ta.explicit_size[v];
  }
  ta.residue_count.assign(L, 0);
  for (std::uint64_t rho = 0; rho < L; ++rho) {
    std::uint64_t c = 0;
    for (std::uint64_t r = 0; r < f.modulus(); ++r) {
      const ResidueRule& rule = f.rules()[r];
      if (rule.kind != ResidueRule::Kind::Affine) continue;
      // beyond the bound the rule covers y iff y = base (mod stride)
      if (mod_floor(static_cast<std::int64_t>(rho) - rule.base, rule.stride) == 0)
        ++c;
    }
    ta.residue_count[rho] = c;
  }
  return ta;
}

// The exact kernel profile of f, certified from the presentation.
inline KernelProfile kernel_profile(const ConcreteFunction& f) {
  TargetAnalysis ta = analyze_targets(f);
  std::map<std::uint64_t, std::uint64_t> finite_tally;  // size -> #targets (finite part)
  std::map<std::uint64_t, bool> size_unbounded;         // size -> infinitely many targets
  std::uint64_t infinite_classes = 0;
  std::uint64_t holes_explicit = 0;
  bool holes_unbounded = false;
  for (std::uint64_t y = 0; y < ta.bound; ++y) {
    std::uint64_t s = ta.explicit_size[y];
    if (s == TargetAnalysis::kInfinite) ++infinite_classes;
    else if (s == 0) ++holes_explicit;
    else ++finite_tally[s];
  }
  for (std::uint64_t rho = 0; rho < ta.period; ++rho) {
    std::uint64_t c = ta.residue_count[rho];
    if (c == 0) holes_unbounded = true;
    else size_unbounded[c] = true;
  }
  KernelProfile p;
  p.kappa = Cardinal::aleph0();
  p.nu = holes_unbounded ? Cardinal::aleph0() : Cardinal::finite(holes_explicit);
  for (const auto& [size, unbounded] : size_unbounded)
    (void)unbounded, finite_tally.try_emplace(size, 0);
  for (const auto& [size, count] : finite_tally) {
    Cardinal value = size_unbounded.count(size) ? Cardinal::aleph0()
                                                : Cardinal::finite(count);
    p.segments.push_back(
        {Cardinal::finite(size), Cardinal::finite(size), value});
  }
  if (infinite_classes > 0)
    p.segments.push_back({Cardinal::aleph0(), Cardinal::aleph0(),
                          Cardinal::finite(infinite_classes)});
  return canonicalize(std::move(p));
}

// All members of a finite kernel class, sorted; y must not be the target of
// a constant rule.
inline std::vector<std::uint64_t> finite_class_members(const ConcreteFunction& f,
                                                       std::uint64_t y) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n < f.prefix_size(); ++n)
    if (f.prefix()[n] == y) out.push_back(n);
  for (std::uint64_t r = 0; r < f.modulus(); ++r) {
    const ResidueRule& rule = f.rules()[r];
    if (rule.kind != ResidueRule::Kind::Affine) continue;
    std::int64_t offset = static_cast<std::int64_t>(y) - rule.base;
    if (offset < 0 || offset % static_cast<std::int64_t>(rule.stride) != 0)
      continue;
    std::uint64_t j = static_cast<std::uint64_t>(offset) / rule.stride;
    std::uint64_t n = r + f.modulus() * j;
    if (n >= f.first_applicable(r)) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Wraps a finite tally of finite classes into x-th member queries of an
// infinite class (constant-rule target): prefix hits first, then the merged
// residue classes of all constant rules targeting y, ascending.
inline std::uint64_t infinite_class_member(const ConcreteFunction& f,
                                           std::uint64_t y, std::uint64_t index) {
  std::vector<std::uint64_t> small;
  for (std::uint64_t n = 0; n < f.prefix_size(); ++n)
    if (f.prefix()[n] == y) small.push_back(n);
  std::vector<std::uint64_t> classes;
  for (std::uint64_t r = 0; r < f.modulus(); ++r)
    if (f.rules()[r].kind == ResidueRule::Kind::Constant &&
        f.rules()[r].target == y)
      classes.push_back(r);
  if (classes.empty())
    throw std::invalid_argument("infinite_class_member: class is finite");
  if (index < small.size()) return small[index];
  index -= small.size();
  // merge the arithmetic progressions by stepping block-wise
  std::uint64_t block = index / classes.size();
  std::uint64_t within = index % classes.size();
  std::vector<std::uint64_t> firsts;
  for (std::uint64_t r : classes) firsts.push_back(f.first_applicable(r));
  std::sort(firsts.begin(), firsts.end());
  return firsts[within] + block * f.modulus();
}

}  // namespace minclone

#endif  // MINCLONE_CONCRETE_FUNCTION_HPP
