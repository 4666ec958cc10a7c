// The desk-scale oracle: realizing kernel profiles as concrete functions on
// the naturals, seeded generators, conjugacy witnesses, and the four surgery
// constructions f |-> f o alpha o f used in the necessity arguments, with
// alpha built exactly as a structured bijection.
//
// Realizable profiles here have kappa = aleph_0, nu and all values in
// {0, 1, 2, ...} u {aleph_0}, and finitely many infinite classes: an
// eventually quasi-affine function makes infinite classes only through its
// finitely many constant rules, so s(aleph_0) = aleph_0 is out of reach of
// this carrier (see README notes on the model).

#ifndef MINCLONE_COUNTABLE_MODEL_HPP
#define MINCLONE_COUNTABLE_MODEL_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "minclone/structured_sets.hpp"

namespace minclone {

// ---------------------------------------------------------------------------
// Realization
// ---------------------------------------------------------------------------

namespace detail {

struct RealizePlan {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> finite_families;  // (size, count), count finite
  std::vector<std::uint64_t> infinite_families;  // finite sizes with s = aleph_0
  std::uint64_t constant_classes = 0;            // s(aleph_0)
  bool co_range_infinite = false;
  std::uint64_t co_range_finite = 0;
};

inline RealizePlan realize_plan(const KernelProfile& p) {
  if (!(p.kappa == Cardinal::aleph0()))
    throw std::invalid_argument("realize: kappa must be aleph_0");
  RealizePlan plan;
  if (p.nu.is_infinite()) plan.co_range_infinite = true;
  else plan.co_range_finite = p.nu.finite_value();
  std::uint64_t expanded = 0;
  for (const Segment& s : p.segments) {
    if (s.lo.is_infinite()) {
      if (!s.value.is_finite())
        throw std::invalid_argument(
            "unrealizable profile: infinitely many infinite classes need "
            "unboundedly many constant rules");
      plan.constant_classes += s.value.finite_value();
      continue;
    }
    if (!s.hi.is_finite())
      throw std::invalid_argument(
          "unrealizable profile: a segment of unbounded finite sizes needs "
          "unboundedly many rule strides");
    std::uint64_t lo = s.lo.finite_value();
    std::uint64_t hi = s.hi.finite_value();
    for (std::uint64_t m = lo; m <= hi; ++m) {
      if (s.value.is_infinite()) {
        plan.infinite_families.push_back(m);
      } else {
        plan.finite_families.emplace_back(m, s.value.finite_value());
        expanded += m * s.value.finite_value();
      }
      if (++expanded > (1u << 20))
        throw std::invalid_argument("realize: profile too large for the model");
    }
  }
  return plan;
}

inline ConcreteFunction finite_extension_bijection(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs);

}  // namespace detail

inline ConcreteFunction random_structured_permutation(std::uint64_t seed,
                                                      std::uint64_t max_modulus = 4,
                                                      std::uint64_t max_blocks = 3);

// Builds a concrete function whose exact kernel profile equals p.  Different
// seeds produce different functions with the same profile (residue roles and
// the explicit layout are shuffled, and a seeded permutation reshapes the
// domain side).
inline ConcreteFunction realize(const KernelProfile& p_in, std::uint64_t seed = 0) {
  KernelProfile p = canonicalize(p_in);
  if (auto v = validate(p); !v.empty())
    throw std::invalid_argument("realize: invalid profile: " + v.front().law +
                                ": " + v.front().detail);
  detail::RealizePlan plan = detail::realize_plan(p);
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 12345);

  // Target layout: explicit region [0, y_start) holds the finite families'
  // targets, the constant-rule targets and the finite co-range holes; above
  // it, one progression mod M per infinite family plus one hole progression
  // when the co-range is infinite.
  std::uint64_t finite_targets = 0;
  for (auto [m, c] : plan.finite_families) finite_targets += c;
  std::uint64_t y_start = finite_targets + plan.constant_classes +
                          (plan.co_range_infinite ? 0 : plan.co_range_finite);
  // an infinite co-range absorbs extra explicit holes, which buys seed
  // variety for rigid shapes such as the constant functions
  if (plan.co_range_infinite) y_start += rng() % 4;
  std::uint64_t M = plan.infinite_families.size() + (plan.co_range_infinite ? 1 : 0);
  if (M == 0 && plan.constant_classes == 0 && plan.infinite_families.empty())
    throw std::invalid_argument("realize: profile has no infinite mass");

  std::vector<std::uint64_t> target_slots(y_start);
  for (std::uint64_t i = 0; i < y_start; ++i) target_slots[i] = i;
  std::shuffle(target_slots.begin(), target_slots.end(), rng);
  std::size_t slot = 0;

  // prefix: the finite families' classes
  std::vector<std::pair<std::uint64_t, std::uint64_t>> class_targets;  // (size, target)
  for (auto [m, c] : plan.finite_families)
    for (std::uint64_t i = 0; i < c; ++i)
      class_targets.emplace_back(m, target_slots[slot++]);
  std::shuffle(class_targets.begin(), class_targets.end(), rng);
  std::vector<std::uint64_t> prefix;
  for (auto [m, y] : class_targets)
    for (std::uint64_t i = 0; i < m; ++i) prefix.push_back(y);

  // Residue roles: for an infinite family of classes of size m, m residue
  // classes all enumerate the family's target progression y_start + q + M*j
  // starting at j = 0; a constant role fills one whole class.
  struct Role {
    bool constant;
    std::uint64_t value;  // target for constants, progression slot otherwise
  };
  std::vector<std::uint64_t> family_slot(M);
  for (std::uint64_t i = 0; i < M; ++i) family_slot[i] = i;
  std::shuffle(family_slot.begin(), family_slot.end(), rng);
  std::vector<Role> roles;
  std::size_t fam = 0;
  for (std::uint64_t m : plan.infinite_families) {
    std::uint64_t q = family_slot[fam++];
    for (std::uint64_t i = 0; i < m; ++i) roles.push_back({false, q});
  }
  for (std::uint64_t i = 0; i < plan.constant_classes; ++i)
    roles.push_back({true, target_slots[slot++]});
  std::shuffle(roles.begin(), roles.end(), rng);

  std::uint64_t k = roles.size();
  std::uint64_t N = prefix.size();
  std::vector<ResidueRule> rules(k);
  for (std::uint64_t r = 0; r < k; ++r) {
    if (roles[r].constant) {
      rules[r] = ResidueRule::constant(roles[r].value);
      continue;
    }
    // first applicable point of the class starts the progression at j = 0
    std::uint64_t j0 = N > r ? (N - r + k - 1) / k : 0;
    std::int64_t base = static_cast<std::int64_t>(y_start + roles[r].value) -
                        static_cast<std::int64_t>(M * j0);
    rules[r] = ResidueRule::affine(base, M);
  }

  ConcreteFunction f = ConcreteFunction::make(std::move(prefix), k, std::move(rules));
  // Permutations on either side preserve the profile: the domain side
  // reshuffles members within classes, the range side permutes whole
  // classes.  A seed-dependent transposition of two range values guarantees
  // distinct functions for distinct seeds even for rigid shapes (a domain
  // permutation alone can disappear inside the kernel classes).
  f = ConcreteFunction::compose(
      f, random_structured_permutation(rng(), /*max_modulus=*/3, /*max_blocks=*/2));
  TargetAnalysis ta = analyze_targets(f);
  EPSet range = targets_of_size(f, ta, 0).complement();
  if (range.infinite() || range.size_if_finite() > 8) {
    std::uint64_t y1 = range.select(seed % 4);
    std::uint64_t y2 = range.select(seed % 4 + 1 + seed % 3);
    ConcreteFunction tau = detail::finite_extension_bijection({{y1, y2}, {y2, y1}});
    f = ConcreteFunction::compose(tau, f);
  }
  if (!(kernel_profile(f) == p))
    throw std::logic_error("realize: produced function certifies a different profile");
  return f;
}

// ---------------------------------------------------------------------------
// Seeded generators
// ---------------------------------------------------------------------------

// Any total function in the carrier: random prefix plus random small rules.
inline ConcreteFunction random_concrete_function(std::mt19937_64& rng) {
  std::uint64_t k = 1 + rng() % 4;
  std::uint64_t n_prefix = rng() % 7;
  std::vector<std::uint64_t> prefix;
  for (std::uint64_t i = 0; i < n_prefix; ++i) prefix.push_back(rng() % 12);
  std::vector<ResidueRule> rules;
  for (std::uint64_t r = 0; r < k; ++r) {
    if (rng() % 3 == 0) {
      rules.push_back(ResidueRule::constant(rng() % 12));
    } else {
      std::uint64_t stride = 1 + rng() % 3;
      rules.push_back(ResidueRule::affine(static_cast<std::int64_t>(rng() % 7), stride));
    }
  }
  return ConcreteFunction::make(std::move(prefix), k, std::move(rules));
}

// A bijection of the naturals: a permuted finite prefix followed by residue
// classes shuffled onto residue classes.  Verified exactly.
inline ConcreteFunction random_structured_permutation(std::uint64_t seed,
                                                      std::uint64_t max_modulus,
                                                      std::uint64_t max_blocks) {
  std::mt19937_64 rng(seed ^ 0xabcdef1234567890ull);
  std::uint64_t k = 1 + (max_modulus == 0 ? 0 : rng() % max_modulus);
  std::uint64_t blocks = max_blocks == 0 ? 0 : rng() % (max_blocks + 1);
  std::uint64_t n_prefix = k * blocks;
  std::vector<std::uint64_t> prefix(n_prefix);
  for (std::uint64_t i = 0; i < n_prefix; ++i) prefix[i] = i;
  std::shuffle(prefix.begin(), prefix.end(), rng);
  std::vector<std::uint64_t> pi(k);
  for (std::uint64_t i = 0; i < k; ++i) pi[i] = i;
  std::shuffle(pi.begin(), pi.end(), rng);
  std::vector<ResidueRule> rules;
  for (std::uint64_t r = 0; r < k; ++r) {
    // class of r from n_prefix on maps onto the class of pi(r):
    // value(n) = pi(r) + k*((n - r)/k) + (shift aligning images to
    // [n_prefix, inf)): alignment is automatic since n_prefix = 0 (mod k)
    rules.push_back(ResidueRule::affine(static_cast<std::int64_t>(pi[r]), k));
  }
  ConcreteFunction alpha =
      ConcreteFunction::make(std::move(prefix), k, std::move(rules)).normalized();
  KernelProfile prof = kernel_profile(alpha);
  if (!(prof.nu.is_zero() && prof.segments.size() == 1 &&
        prof.segments[0].hi == Cardinal::finite(1)))
    throw std::logic_error("structured permutation failed its bijection check");
  return alpha;
}

inline ConcreteFunction identity_permutation() { return ConcreteFunction::identity(); }

// ---------------------------------------------------------------------------
// Class-structure helpers
// ---------------------------------------------------------------------------

// The kernel class of an infinite-class target as a set of naturals.
inline EPSet class_set(const ConcreteFunction& f, std::uint64_t y) {
  std::uint64_t k = f.modulus();
  std::uint64_t bound = (f.prefix_size() + k - 1) / k * k;
  std::vector<std::uint64_t> expl, residues;
  for (std::uint64_t n = 0; n < bound; ++n)
    if (f.apply(n) == y) expl.push_back(n);
  for (std::uint64_t r = 0; r < k; ++r)
    if (f.rules()[r].kind == ResidueRule::Kind::Constant &&
        f.rules()[r].target == y)
      residues.push_back(r);
  return EPSet::make(std::move(expl), bound, k, std::move(residues));
}

// For the targets of one finite class size: maps each target y to the
// member_index-th element of f^-1[y].  In the periodic region the index
// walks the covering rules in rule order; in the explicit region it walks
// the sorted member list.  For each fixed size the selectors over all
// indices partition the class members.
inline PartialMap member_selector(const ConcreteFunction& f,
                                  const TargetAnalysis& ta, std::uint64_t size,
                                  std::uint64_t member_index) {
  if (member_index >= size)
    throw std::invalid_argument("member_selector: index out of range");
  PartialMap out;
  for (std::uint64_t y = 0; y < ta.bound; ++y) {
    if (ta.explicit_size[y] != size) continue;
    out.explicit_pairs[y] = finite_class_members(f, y)[member_index];
  }
  std::uint64_t L = ta.period;
  for (std::uint64_t rho = 0; rho < L; ++rho) {
    if (ta.residue_count[rho] != size) continue;
    // covering rules of this residue class, in rule order
    std::uint64_t seen = 0;
    for (std::uint64_t r = 0; r < f.modulus(); ++r) {
      const ResidueRule& rule = f.rules()[r];
      if (rule.kind != ResidueRule::Kind::Affine) continue;
      if (mod_floor(static_cast<std::int64_t>(rho) - rule.base, rule.stride) != 0)
        continue;
      if (seen++ != member_index) continue;
      // first class target at or above the bound
      std::uint64_t rem = ta.bound % L;
      std::uint64_t y0 = ta.bound + (rho >= rem ? rho - rem : L - rem + rho);
      // position of the hit: n = r + k*j with base + stride*j = y
      std::int64_t j = (static_cast<std::int64_t>(y0) - rule.base) /
                       static_cast<std::int64_t>(rule.stride);
      MapPiece piece;
      piece.first = y0;
      piece.period = L;
      piece.image_first = r + f.modulus() * static_cast<std::uint64_t>(j);
      piece.image_step = f.modulus() * (L / rule.stride);
      out.pieces.push_back(piece);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjugacy witnesses
// ---------------------------------------------------------------------------

struct ConjugacyWitness {
  ConcreteFunction beta;   // f = beta o g o gamma
  ConcreteFunction gamma;
};

inline ConjugacyWitness conjugacy_witness(const ConcreteFunction& f,
                                          const ConcreteFunction& g) {
  KernelProfile pf = kernel_profile(f), pg = kernel_profile(g);
  if (!(pf == pg))
    throw std::invalid_argument("conjugacy_witness: kernel profiles differ");
  TargetAnalysis taf = analyze_targets(f), tag = analyze_targets(g);

  // finite sizes present anywhere
  std::vector<std::uint64_t> sizes;
  for (const Segment& s : pf.segments) {
    if (s.lo.is_infinite()) continue;
    for (std::uint64_t m = s.lo.finite_value();
         m <= (s.hi.is_finite() ? s.hi.finite_value() : s.lo.finite_value()); ++m)
      sizes.push_back(m);
  }

  std::vector<PartialMap> gamma_parts, beta_parts;
  for (std::uint64_t size : sizes) {
    EPSet yf = targets_of_size(f, taf, size);
    EPSet yg = targets_of_size(g, tag, size);
    PartialMap match_fg = match_increasing(yf, yg);
    beta_parts.push_back(match_increasing(yg, yf));
    for (std::uint64_t t = 0; t < size; ++t) {
      PartialMap sel_f = member_selector(f, taf, size, t);
      PartialMap sel_g = member_selector(g, tag, size, t);
      gamma_parts.push_back(compose_partial(
          sel_g, compose_partial(match_fg, inverse_partial(sel_f))));
    }
  }
  // infinite classes: finitely many constant-rule targets on each side
  std::vector<std::uint64_t> inf_f, inf_g;
  for (std::uint64_t y = 0; y < taf.bound; ++y)
    if (taf.infinite_class(y)) inf_f.push_back(y);
  for (std::uint64_t y = 0; y < tag.bound; ++y)
    if (tag.infinite_class(y)) inf_g.push_back(y);
  if (inf_f.size() != inf_g.size())
    throw std::logic_error("conjugacy_witness: infinite class counts differ");
  if (!inf_f.empty()) {
    PartialMap beta_inf;
    for (std::size_t i = 0; i < inf_f.size(); ++i) {
      gamma_parts.push_back(
          match_increasing(class_set(f, inf_f[i]), class_set(g, inf_g[i])));
      beta_inf.explicit_pairs[inf_g[i]] = inf_f[i];
    }
    beta_parts.push_back(std::move(beta_inf));
  }
  // co-ranges
  EPSet holes_f = targets_of_size(f, taf, 0);
  EPSet holes_g = targets_of_size(g, tag, 0);
  if (!holes_f.empty() || !holes_g.empty())
    beta_parts.push_back(match_increasing(holes_g, holes_f));

  ConjugacyWitness w;
  w.gamma = assemble_bijection(gamma_parts);
  w.beta = assemble_bijection(beta_parts);
  return w;
}

// ---------------------------------------------------------------------------
// Surgeries: g = f o alpha o f with alpha built per construction
// ---------------------------------------------------------------------------

namespace detail {

inline ConcreteFunction sandwich(const ConcreteFunction& f,
                                 const ConcreteFunction& alpha) {
  return ConcreteFunction::compose(f, ConcreteFunction::compose(alpha, f));
}

// alpha from a finite partial injection, completed on its own support and
// extended by the identity.
inline ConcreteFunction finite_extension_bijection(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
  std::uint64_t top = 0;
  for (auto [a, b] : pairs) top = std::max({top, a + 1, b + 1});
  std::vector<std::int64_t> img(top, -1);
  std::vector<bool> taken(top, false);
  for (auto [a, b] : pairs) {
    if (img[a] != -1 || taken[b])
      throw std::invalid_argument("finite extension: not injective");
    img[a] = static_cast<std::int64_t>(b);
    taken[b] = true;
  }
  std::vector<std::uint64_t> free_targets;
  for (std::uint64_t v = 0; v < top; ++v)
    if (!taken[v]) free_targets.push_back(v);
  std::size_t next = 0;
  std::vector<std::uint64_t> prefix(top);
  for (std::uint64_t n = 0; n < top; ++n)
    prefix[n] = img[n] != -1 ? static_cast<std::uint64_t>(img[n])
                             : free_targets[next++];
  return ConcreteFunction::make(std::move(prefix), 1,
                                {ResidueRule::affine(0, 1)})
      .normalized();
}

}  // namespace detail

// Small range (finitely many values) forces a constant into the generated
// monoid: alpha maps the range injectively into one infinite class.
inline ConcreteFunction surgery_collapse_to_constant(const ConcreteFunction& f) {
  for (const ResidueRule& r : f.rules())
    if (r.kind == ResidueRule::Kind::Affine)
      throw std::invalid_argument(
          "collapse hypothesis: range must be finite (no affine rules)");
  TargetAnalysis ta = analyze_targets(f);
  std::uint64_t y_star = ta.bound;
  for (std::uint64_t y = 0; y < ta.bound; ++y)
    if (ta.infinite_class(y)) {
      y_star = y;
      break;
    }
  if (y_star == ta.bound)
    throw std::logic_error("finite range with no infinite class");
  std::vector<std::uint64_t> range_vals;
  for (std::uint64_t y = 0; y < ta.bound; ++y)
    if (ta.explicit_size[y] != 0) range_vals.push_back(y);
  EPSet target_class = class_set(f, y_star);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::size_t i = 0; i < range_vals.size(); ++i)
    pairs.emplace_back(range_vals[i], target_class.select(i));
  ConcreteFunction alpha = detail::finite_extension_bijection(pairs);
  ConcreteFunction out = detail::sandwich(f, alpha);
  KernelProfile prof = kernel_profile(out);
  if (!(prof.segments.size() == 1 && prof.segments[0].lo == Cardinal::aleph0() &&
        prof.segments[0].value == Cardinal::finite(1)))
    throw std::logic_error("collapse surgery did not produce a constant");
  return out;
}

// Infinitely many classes above the minimum: alpha maps Y_mu u Z onto
// f^-1[Z] for Z half of Y_{>mu}; every class of the sandwich exceeds mu.
inline ConcreteFunction surgery_raise_min(const ConcreteFunction& f) {
  KernelProfile p = kernel_profile(f);
  CharacteristicValues cv = characteristic_values(p);
  if (!cv.rho.is_infinite())
    throw std::invalid_argument("raise-min hypothesis: s(>mu) must be infinite");
  TargetAnalysis ta = analyze_targets(f);
  std::uint64_t mu = cv.mu.is_finite() ? cv.mu.finite_value() : 0;
  if (mu == 0)
    throw std::invalid_argument("raise-min needs a finite minimal class size");
  EPSet y_mu = targets_of_size(f, ta, mu);
  EPSet y_above = targets_above_size(f, ta, mu);
  EPSet z = y_above.even_indexed();
  EPSet a1 = EPSet::union_disjoint(y_mu, z);
  EPSet b1 = preimage_set(f, z);
  PartialMap part1 = match_increasing(a1, b1);
  PartialMap part2 = match_increasing(a1.complement(), b1.complement());
  ConcreteFunction alpha = assemble_bijection({part1, part2});
  ConcreteFunction out = detail::sandwich(f, alpha);
  CharacteristicValues cv_out = characteristic_values(kernel_profile(out));
  if (!(cv.mu < cv_out.mu))
    throw std::logic_error("raise-min surgery did not raise the minimum");
  return out;
}

// Finite mu > 1: alpha maps half of Y_mu onto its own preimage, creating
// infinitely many classes of size mu^2.
inline ConcreteFunction surgery_square_min(const ConcreteFunction& f) {
  KernelProfile p = kernel_profile(f);
  CharacteristicValues cv = characteristic_values(p);
  if (!cv.mu.is_finite() || cv.mu.finite_value() <= 1)
    throw std::invalid_argument("square-min hypothesis: mu must be finite and > 1");
  if (!cv.sigma.is_infinite())
    throw std::invalid_argument("square-min needs infinitely many minimal classes");
  TargetAnalysis ta = analyze_targets(f);
  std::uint64_t mu = cv.mu.finite_value();
  EPSet s = targets_of_size(f, ta, mu).even_indexed();
  EPSet b1 = preimage_set(f, s);
  PartialMap part1 = match_increasing(s, b1);
  PartialMap part2 = match_increasing(s.complement(), b1.complement());
  ConcreteFunction alpha = assemble_bijection({part1, part2});
  ConcreteFunction out = detail::sandwich(f, alpha);
  if (!(eval(kernel_profile(out), Cardinal::finite(mu * mu)) ==
        Cardinal::aleph0()))
    throw std::logic_error("square-min surgery did not create mu^2 classes");
  return out;
}

// mu = 1 and infinitely many classes of the finite size n (all smaller sizes
// above 1 at most nu-many): the sandwich pushes every size-n class past n,
// leaving s(n) <= nu.
inline ConcreteFunction surgery_drop_finite_class(const ConcreteFunction& f,
                                                  std::uint64_t n) {
  if (n <= 1) throw std::invalid_argument("drop hypothesis: need 1 < n");
  KernelProfile p = kernel_profile(f);
  CharacteristicValues cv = characteristic_values(p);
  if (!(cv.mu == Cardinal::finite(1)) || !cv.sigma.is_infinite())
    throw std::invalid_argument("drop hypothesis: mu = 1 with infinitely many "
                                "singleton classes");
  if (!eval(p, Cardinal::finite(n)).is_infinite())
    throw std::invalid_argument("drop hypothesis: s(n) must be infinite");
  for (std::uint64_t m = 2; m < n; ++m)
    if (p.nu < eval(p, Cardinal::finite(m)))
      throw std::invalid_argument(
          "drop hypothesis: s(m) <= nu must hold below n");
  TargetAnalysis ta = analyze_targets(f);
  EPSet y_n = targets_of_size(f, ta, n);
  EPSet y_1 = targets_of_size(f, ta, 1);
  EPSet z = y_1.even_indexed();
  PartialMap sel0 = member_selector(f, ta, n, 0);   // y in Y_n -> f^-1[y]
  PartialMap sel1 = member_selector(f, ta, n, 1);
  PartialMap into_second = compose_partial(sel1, match_increasing(z, y_n));
  std::vector<PartialMap> used = {sel0, into_second};
  EPSet covered_domain = EPSet::union_disjoint(y_n, z);
  EPSet covered_image = EPSet::union_disjoint(image_set(sel0), image_set(into_second));
  PartialMap rest = match_increasing(covered_domain.complement(),
                                     covered_image.complement());
  used.push_back(rest);
  ConcreteFunction alpha = assemble_bijection(used);
  ConcreteFunction out = detail::sandwich(f, alpha);
  Cardinal after = eval(kernel_profile(out), Cardinal::finite(n));
  if (p.nu < after)
    throw std::logic_error("drop surgery left more size-n classes than nu");
  return out;
}

}  // namespace minclone

#endif  // MINCLONE_COUNTABLE_MODEL_HPP
