// Symbolic bounds on the kernel profile of a composition.
//
// Throughout, h = outer o inner (outer applied last), and the preimage of y
// under h decomposes as |h^-1[y]| = sum over z in outer^-1[y] of |inner^-1[z]|.
// Each bound below evaluates the right-hand side of one composition
// inequality on the two presentations; envelope() picks the applicable variants per queried
// cardinal and minimizes over the presented parameter choices.
//
// The profiles of the two factors do not determine the profile of the
// composition, so upper and lower bounds are the best possible symbolic
// answer; the countable model supplies exact compositions to test them
// against.

#ifndef MINCLONE_COMPOSITION_BOUNDS_HPP
#define MINCLONE_COMPOSITION_BOUNDS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minclone/kernel_profile.hpp"

namespace minclone {

inline void require_same_kappa(const KernelProfile& a, const KernelProfile& b) {
  if (!(a.kappa == b.kappa))
    throw std::invalid_argument("kappa mismatch: " + a.kappa.to_string() +
                                " vs " + b.kappa.to_string());
}

// Condition (nu) of the minimality criterion, a hypothesis of the finite
// bound: if the least class size is finite, the co-range is zero or infinite.
inline bool satisfies_nu_condition(const KernelProfile& p) {
  if (p.segments.empty()) return true;
  if (!p.segments.front().lo.is_finite()) return true;
  return p.nu.is_zero() || p.nu.is_infinite();
}

// nu_outer <= nu_h <= nu_outer + nu_inner.
inline std::pair<Cardinal, Cardinal> nu_bounds(const KernelProfile& outer,
                                               const KernelProfile& inner) {
  require_same_kappa(outer, inner);
  return {outer.nu, card_add(outer.nu, inner.nu)};
}

// s_h(n) <= s_f(n) + s_g(>1, <=n) + min(nu_g, s_f(>n, <=nu_g)) for finite n,
// where f is the outer and g the inner factor; g must satisfy (nu).
inline Cardinal bound_finite(const KernelProfile& outer,
                             const KernelProfile& inner, const Cardinal& n) {
  require_same_kappa(outer, inner);
  if (!n.is_finite() || n.is_zero())
    throw std::invalid_argument("bound_finite requires finite n >= 1");
  if (!satisfies_nu_condition(inner))
    throw std::invalid_argument(
        "lemma hypothesis: inner profile must satisfy (nu)");
  Cardinal mid = sum_range(inner, Cardinal::finite(1), n, /*lo_strict=*/true);
  Cardinal tail = sum_range(outer, n, inner.nu, /*lo_strict=*/true);
  return card_add(card_add(eval(outer, n), mid), card_min(inner.nu, tail));
}

// s_h(xi) <= s_f(xi) + s_g(xi) + min(nu_g, s_f(>xi, <=nu_g)) for infinite
// regular xi.
inline Cardinal bound_regular(const KernelProfile& outer,
                              const KernelProfile& inner, const Cardinal& xi) {
  require_same_kappa(outer, inner);
  if (!xi.is_infinite() || !is_regular(xi))
    throw std::invalid_argument(
        "bound_regular requires infinite regular xi; use bound_singular/bound_finite");
  Cardinal tail = sum_range(outer, xi, inner.nu, /*lo_strict=*/true);
  return card_add(card_add(eval(outer, xi), eval(inner, xi)),
                  card_min(inner.nu, tail));
}

// s_h(xi) <= s_f(xi) + s_g(>lambda, <=xi) + min(nu_g, s_f(>xi, <=nu_g)) for
// infinite xi and any lambda < xi.
inline Cardinal bound_singular(const KernelProfile& outer,
                               const KernelProfile& inner, const Cardinal& xi,
                               const Cardinal& lambda) {
  require_same_kappa(outer, inner);
  if (!xi.is_infinite())
    throw std::invalid_argument("bound_singular requires infinite xi");
  if (!(lambda < xi))
    throw std::invalid_argument("bound_singular requires lambda < xi");
  Cardinal mid = sum_range(inner, lambda, xi, /*lo_strict=*/true);
  Cardinal tail = sum_range(outer, xi, inner.nu, /*lo_strict=*/true);
  return card_add(card_add(eval(outer, xi), mid), card_min(inner.nu, tail));
}

// s_h(>xi) <= s_f(>xi) + s_g(>xi) for infinite xi.
inline Cardinal bound_tail(const KernelProfile& outer,
                           const KernelProfile& inner, const Cardinal& xi) {
  require_same_kappa(outer, inner);
  if (!xi.is_infinite())
    throw std::invalid_argument("bound_tail requires infinite xi");
  return card_add(sum_range(outer, xi, outer.kappa, /*lo_strict=*/true),
                  sum_range(inner, xi, inner.kappa, /*lo_strict=*/true));
}

// s_h(>=xi) <= s_f(>=xi) + s_g(>=xi) for xi infinite regular or xi <= 2.
inline Cardinal bound_geq(const KernelProfile& outer,
                          const KernelProfile& inner, const Cardinal& xi) {
  require_same_kappa(outer, inner);
  bool small = xi.is_finite() && xi.finite_value() <= 2;
  if (!small && !(xi.is_infinite() && is_regular(xi)))
    throw std::invalid_argument(
        "bound_geq requires xi infinite regular or xi <= 2");
  return card_add(sum_range(outer, xi, outer.kappa),
                  sum_range(inner, xi, inner.kappa));
}

// s_h(>xi, <=nu_inner) <= s_outer(>xi, <=nu_inner) + s_inner(>xi, <=nu_inner)
// for infinite xi; the range limit is the inner factor's co-range size.
inline Cardinal bound_interval(const KernelProfile& inner,
                               const KernelProfile& outer, const Cardinal& xi) {
  require_same_kappa(outer, inner);
  if (!xi.is_infinite())
    throw std::invalid_argument("bound_interval requires infinite xi");
  return card_add(sum_range(outer, xi, inner.nu, /*lo_strict=*/true),
                  sum_range(inner, xi, inner.nu, /*lo_strict=*/true));
}

// s_h(xi) >= s_f(xi) for infinite xi > nu_g, provided s_g(>xi) = 0 or
// s_g(>xi) < s_f(xi) with s_f(xi) infinite.  nullopt when the hypothesis
// fails (no conclusion, not a zero bound).
inline std::optional<Cardinal> lower_beyond_nu(const KernelProfile& outer,
                                               const KernelProfile& inner,
                                               const Cardinal& xi) {
  require_same_kappa(outer, inner);
  if (!xi.is_infinite() || !(inner.nu < xi))
    throw std::invalid_argument("lower_beyond_nu requires infinite xi > nu of inner");
  Cardinal sf = eval(outer, xi);
  Cardinal sg_tail = sum_range(inner, xi, inner.kappa, /*lo_strict=*/true);
  if (sg_tail.is_zero()) return sf;
  if (sf.is_infinite() && sg_tail < sf) return sf;
  return std::nullopt;
}

// s_h(xi) >= s_f(xi) for infinite xi <= nu_g, provided s_g(>xi) + nu_g <
// s_f(xi) and s_f(xi) is infinite.
inline std::optional<Cardinal> lower_below_nu(const KernelProfile& outer,
                                              const KernelProfile& inner,
                                              const Cardinal& xi) {
  require_same_kappa(outer, inner);
  if (!xi.is_infinite() || inner.nu < xi)
    throw std::invalid_argument("lower_below_nu requires infinite xi <= nu of inner");
  Cardinal sf = eval(outer, xi);
  if (!sf.is_infinite()) return std::nullopt;
  Cardinal lhs = card_add(sum_range(inner, xi, inner.kappa, /*lo_strict=*/true),
                          inner.nu);
  if (lhs < sf) return sf;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Envelope
// ---------------------------------------------------------------------------

struct QueryBounds {
  Cardinal xi;
  Cardinal upper;                    // tightest derived upper bound (kappa if none applies)
  std::string upper_source;
  bool upper_finite_marker = false;  // proves finiteness without naming a cardinal
  std::optional<Cardinal> lower;
  std::string lower_source;
};

struct BoundSet {
  Cardinal nu_lo, nu_hi;
  std::vector<QueryBounds> queries;
};

namespace detail {

// Presented boundary cardinals of a profile: segment endpoints and their
// successors.  These are the only places range sums can change.
inline std::vector<Cardinal> presented_boundaries(const KernelProfile& p) {
  std::vector<Cardinal> out;
  for (const Segment& s : p.segments) {
    out.push_back(s.lo);
    out.push_back(s.hi);
    out.push_back(card_succ(s.hi));
  }
  return out;
}

}  // namespace detail

// Tightest combination of the applicable bounds for each queried cardinal,
// with lambda in the singular bound minimized over the inner profile's
// presented boundaries.
inline BoundSet envelope(const KernelProfile& outer, const KernelProfile& inner,
                         const std::vector<Cardinal>& queries) {
  require_same_kappa(outer, inner);
  BoundSet bs;
  auto nb = nu_bounds(outer, inner);
  bs.nu_lo = nb.first;
  bs.nu_hi = nb.second;

  std::vector<Cardinal> lambda_candidates = {Cardinal::finite(1)};
  for (const Cardinal& c : detail::presented_boundaries(inner))
    lambda_candidates.push_back(c);
  std::vector<Cardinal> tail_candidates;
  for (const KernelProfile* p : {&outer, &inner})
    for (const Cardinal& c : detail::presented_boundaries(*p))
      if (c.is_infinite()) tail_candidates.push_back(c);

  for (const Cardinal& xi : queries) {
    QueryBounds q;
    q.xi = xi;
    q.upper = outer.kappa;
    q.upper_source = "trivial";
    auto consider = [&q](const Cardinal& bound, const std::string& src) {
      if (bound < q.upper) {
        q.upper = bound;
        q.upper_source = src;
      }
    };
    if (xi.is_finite()) {
      if (satisfies_nu_condition(inner))
        consider(bound_finite(outer, inner, xi), "finite");
      if (xi.finite_value() <= 2)
        consider(bound_geq(outer, inner, xi), "geq");
    } else {
      if (is_regular(xi)) {
        consider(bound_regular(outer, inner, xi), "regular");
        consider(bound_geq(outer, inner, xi), "geq");
      }
      for (const Cardinal& lam : lambda_candidates)
        if (lam < xi)
          consider(bound_singular(outer, inner, xi, lam),
                   "singular lambda=" + lam.to_string());
      for (const Cardinal& zeta : tail_candidates)
        if (zeta < xi)
          consider(bound_tail(outer, inner, zeta),
                   "tail >" + zeta.to_string());
      std::optional<Cardinal> lo;
      std::string lo_src;
      if (inner.nu < xi) {
        lo = lower_beyond_nu(outer, inner, xi);
        lo_src = "beyond-nu";
      } else {
        lo = lower_below_nu(outer, inner, xi);
        lo_src = "below-nu";
      }
      if (lo) {
        q.lower = lo;
        q.lower_source = lo_src;
        if (q.upper < *q.lower)
          throw std::logic_error("bound envelope inconsistent at " +
                                 xi.to_string());
      }
    }
    bs.queries.push_back(std::move(q));
  }
  return bs;
}

}  // namespace minclone

#endif  // MINCLONE_COMPOSITION_BOUNDS_HPP
