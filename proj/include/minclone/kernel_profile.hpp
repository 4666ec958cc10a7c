// Finitely presented kernel sequences.
//
// A kernel sequence s assigns to every cardinal xi in [1, kappa] the number
// of kernel classes of size exactly xi.  We present s as a finite list of
// disjoint closed cardinal intervals [lo, hi], constant value on each, zero
// off all segments.  Two counting laws tie a presentation to an actual
// function on a set of size kappa:
//
//   mass law:   sum over all xi of xi * s(xi)  == kappa
//   range law:  (sum over all xi of s(xi)) + nu == kappa
//
// On top of the presentation this file computes range sums, the strong/weak
// support split, the eight characteristic values, and the inversely
// accumulated sequence xi |-> s(>= xi) as an exact piecewise description
// (constant pieces, plus arithmetic runs where the sequence steps down at
// every successor inside a finite segment).

#ifndef MINCLONE_KERNEL_PROFILE_HPP
#define MINCLONE_KERNEL_PROFILE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minclone/cardinal.hpp"

namespace minclone {

struct Segment {
  Cardinal lo;
  Cardinal hi;
  Cardinal value;  // s(xi) for every cardinal lo <= xi <= hi; must be >= 1

  friend bool operator==(const Segment& a, const Segment& b) {
    return a.lo == b.lo && a.hi == b.hi && a.value == b.value;
  }
};

struct KernelProfile {
  Cardinal kappa;
  Cardinal nu;
  std::vector<Segment> segments;

  friend bool operator==(const KernelProfile& a, const KernelProfile& b) {
    return a.kappa == b.kappa && a.nu == b.nu && a.segments == b.segments;
  }
};

// The immediate cardinal predecessor; defined for finite cardinals >= 1 and
// successor alephs.  Limit cardinals have none.
inline Cardinal card_pred(const Cardinal& c) {
  if (c.is_finite()) {
    if (c.is_zero()) throw std::domain_error("card_pred: zero has no predecessor");
    return Cardinal::finite(c.finite_value() - 1);
  }
  const Ordinal& idx = c.aleph_index();
  if (!idx.is_successor())
    throw std::domain_error("card_pred: limit cardinal has no predecessor");
  Ordinal down = idx.limit_part();
  if (idx.finite_tail() > 1)
    down = Ordinal::sum(down, Ordinal::finite(idx.finite_tail() - 1));
  return Cardinal::aleph(down);
}

// Sorts segments and merges adjacent ones with equal value ([a,b] and
// [succ(b),c] describe one interval).  Overlaps are left alone for validate
// to report.
inline KernelProfile canonicalize(KernelProfile p) {
  std::sort(p.segments.begin(), p.segments.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  std::vector<Segment> merged;
  for (const Segment& s : p.segments) {
    if (!merged.empty() && merged.back().value == s.value &&
        merged.back().hi < s.lo && card_succ(merged.back().hi) == s.lo) {
      merged.back().hi = s.hi;
    } else {
      merged.push_back(s);
    }
  }
  p.segments = std::move(merged);
  return p;
}

struct Violation {
  std::string law;         // which invariant failed
  std::string detail;
  int segment_index = -1;  // offending segment, when one exists
};

// Total kernel mass contributed by one segment: sum over xi in [lo, hi] of
// xi * value.  The supremum hi*value is attained, so the infinite case is
// max(hi*value, |interval|).
inline Cardinal segment_mass(const Segment& s) {
  if (s.hi.is_finite() && s.value.is_finite())
    return card_mul(s.value, sum_of_cardinals_in(s.lo, s.hi));
  return card_max(card_mul(s.hi, s.value), count_cardinals_in(s.lo, s.hi));
}

// Number of kernel classes a segment describes.
inline Cardinal segment_class_count(const Segment& s) {
  return card_mul(s.value, count_cardinals_in(s.lo, s.hi));
}

inline std::vector<Violation> validate(const KernelProfile& p) {
  std::vector<Violation> out;
  if (!p.kappa.is_infinite())
    out.push_back({"kappa", "base set must be infinite", -1});
  if (p.nu > p.kappa) out.push_back({"nu", "nu exceeds kappa", -1});
  const Cardinal one = Cardinal::finite(1);
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    const Segment& s = p.segments[i];
    int idx = static_cast<int>(i);
    if (s.lo < one) out.push_back({"segment", "lo below 1", idx});
    if (s.lo > s.hi) out.push_back({"segment", "lo exceeds hi", idx});
    if (s.hi > p.kappa) out.push_back({"segment", "hi exceeds kappa", idx});
    if (s.value.is_zero()) out.push_back({"segment", "value must be >= 1", idx});
    if (s.value > p.kappa) out.push_back({"segment", "value exceeds kappa", idx});
    if (i > 0 && !(p.segments[i - 1].hi < s.lo))
      out.push_back({"order", "segments overlap or are unsorted", idx});
  }
  if (!out.empty()) return out;  // counting laws need a structurally sane list

  Cardinal mass = Cardinal::finite(0);
  Cardinal classes = Cardinal::finite(0);
  for (const Segment& s : p.segments) {
    mass = card_add(mass, segment_mass(s));
    classes = card_add(classes, segment_class_count(s));
  }
  if (!(mass == p.kappa))
    out.push_back({"mass law", "total class mass " + mass.to_string() +
                                   " != kappa " + p.kappa.to_string(),
                   -1});
  if (!(card_add(classes, p.nu) == p.kappa))
    out.push_back({"range law", "classes " + classes.to_string() + " + nu " +
                                    p.nu.to_string() + " != kappa " +
                                    p.kappa.to_string(),
                   -1});
  return out;
}

inline bool is_valid(const KernelProfile& p) { return validate(p).empty(); }

// s(xi).  xi must lie in [1, kappa].
inline Cardinal eval(const KernelProfile& p, const Cardinal& xi) {
  if (xi < Cardinal::finite(1) || xi > p.kappa)
    throw std::invalid_argument("eval: argument outside [1, kappa]");
  for (const Segment& s : p.segments)
    if (!(xi < s.lo) && !(s.hi < xi)) return s.value;
  return Cardinal::finite(0);
}

// Sum of s over all cardinals xi with lo <R1 xi <R2 hi (strictness per flag),
// clamped to the domain [1, kappa].  Empty ranges sum to 0.
inline Cardinal sum_range(const KernelProfile& p, Cardinal lo, Cardinal hi,
                          bool lo_strict = false, bool hi_strict = false) {
  if (lo_strict) lo = card_succ(lo);
  if (lo < Cardinal::finite(1)) lo = Cardinal::finite(1);
  if (p.kappa < hi) {
    hi = p.kappa;
    hi_strict = false;
  }
  Cardinal total = Cardinal::finite(0);
  for (const Segment& s : p.segments) {
    Cardinal a = card_max(lo, s.lo);
    Cardinal b = s.hi;
    bool b_strict = false;
    if (hi < b || (hi == b && hi_strict)) {
      b = hi;
      b_strict = hi_strict;
    }
    Cardinal n = count_cardinals_in(a, b, false, b_strict);
    total = card_add(total, card_mul(s.value, n));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Strong support
// ---------------------------------------------------------------------------

// Least xi in [a, b] with value * xi > nu, if any.  value * xi is monotone in
// xi, so a segment splits into a weak prefix and a strong suffix.
inline std::optional<Cardinal> least_strong_point(const Cardinal& value,
                                                  const Cardinal& nu,
                                                  const Cardinal& a,
                                                  const Cardinal& b) {
  if (card_mul(value, a) > nu) return a;
  if (!(card_mul(value, b) > nu)) return std::nullopt;
  // Here value <= nu (else value * a >= value > nu already).
  if (nu.is_infinite()) return card_succ(nu);
  std::uint64_t v = value.finite_value();
  Cardinal threshold = Cardinal::finite(nu.finite_value() / v + 1);
  return card_max(a, threshold);
}

struct SupportSplit {
  std::vector<Segment> strong;  // where s(xi) * xi > nu
  std::vector<Segment> weak;    // rest of the support
};

inline SupportSplit support_split(const KernelProfile& p) {
  SupportSplit out;
  for (const Segment& s : p.segments) {
    auto cut = least_strong_point(s.value, p.nu, s.lo, s.hi);
    if (!cut) {
      out.weak.push_back(s);
    } else if (*cut == s.lo) {
      out.strong.push_back(s);
    } else {
      out.weak.push_back(Segment{s.lo, card_pred(*cut), s.value});
      out.strong.push_back(Segment{*cut, s.hi, s.value});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Accumulated sequence xi |-> s(>= xi)
// ---------------------------------------------------------------------------

// One piece of the accumulated step function.  Covers the cardinals xi with
// lo <= xi <= hi (or xi < hi when hi_open; an open top is used where a region
// ends just below a limit aleph or below aleph_0).  When step == 0 the value
// is constant; otherwise lo, hi and value are finite and the value at xi is
// value - step * (xi - lo).
struct StepPiece {
  Cardinal lo;
  Cardinal hi;
  bool hi_open = false;
  Cardinal value;
  std::uint64_t step = 0;

  bool contains(const Cardinal& xi) const {
    if (xi < lo) return false;
    return hi_open ? xi < hi : !(hi < xi);
  }
  Cardinal value_at(const Cardinal& xi) const {
    if (step == 0) return value;
    return Cardinal::finite(value.finite_value() -
                            step * (xi.finite_value() - lo.finite_value()));
  }
  Cardinal value_at_top() const { return step == 0 ? value : value_at(hi); }
};

class StepFn {
 public:
  StepFn() = default;
  explicit StepFn(std::vector<StepPiece> pieces) : pieces_(std::move(pieces)) {}

  const std::vector<StepPiece>& pieces() const { return pieces_; }

  Cardinal value_at(const Cardinal& xi) const {
    for (const StepPiece& p : pieces_)
      if (p.contains(xi)) return p.value_at(xi);
    throw std::logic_error("StepFn: argument outside the covered domain");
  }

  // Pointwise equality on all cardinals in [1, limit), limit exclusive.
  bool equal_below(const StepFn& other, const Cardinal& limit) const {
    std::vector<Cardinal> breaks;
    for (const StepFn* f : {this, &other})
      for (const StepPiece& p : f->pieces_)
        if (p.lo < limit) breaks.push_back(p.lo);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    auto piece_at = [](const std::vector<StepPiece>& v,
                       const Cardinal& xi) -> const StepPiece* {
      for (const StepPiece& p : v)
        if (p.contains(xi)) return &p;
      return nullptr;
    };
    for (std::size_t i = 0; i < breaks.size(); ++i) {
      const Cardinal& x = breaks[i];
      const StepPiece* pa = piece_at(pieces_, x);
      const StepPiece* pb = piece_at(other.pieces_, x);
      if (!pa || !pb) return false;
      if (!(pa->value_at(x) == pb->value_at(x))) return false;
      if (pa->step != pb->step) {
        // Between consecutive breakpoints both pieces stay active, so it is
        // enough to probe the next cardinal if the region has one.
        Cardinal next = card_succ(x);
        bool in_region = next < limit && pa->contains(next) &&
                         pb->contains(next) &&
                         (i + 1 == breaks.size() || next < breaks[i + 1]);
        if (in_region && !(pa->value_at(next) == pb->value_at(next)))
          return false;
      }
    }
    return true;
  }

 private:
  std::vector<StepPiece> pieces_;
};

namespace detail {

// Emits the pieces of xi |-> value * |[xi, b]| + tail over the segment
// [a, b], descending (top region first).
inline void emit_segment_pieces(const Segment& seg, const Cardinal& tail,
                                std::vector<StepPiece>& out) {
  const Cardinal& a = seg.lo;
  const Cardinal& b = seg.hi;
  const Cardinal& v = seg.value;
  if (b.is_finite()) {
    if (v.is_finite() && tail.is_finite()) {
      std::uint64_t width = b.finite_value() - a.finite_value() + 1;
      Cardinal at_lo = Cardinal::finite(checked_add(
          tail.finite_value(), checked_mul(v.finite_value(), width)));
      out.push_back(StepPiece{a, b, false, at_lo, v.finite_value()});
    } else {
      out.push_back(
          StepPiece{a, b, false,
                    card_add(card_mul(v, count_cardinals_in(a, b)), tail), 0});
    }
    return;
  }
  // b is an aleph: the finitely many cardinals at finite index distance below
  // b are walked point by point, then the rest of the segment is one piece
  // (down there |[xi, b]| is a constant aleph_0).
  Ordinal beta = b.aleph_index();
  Ordinal limit_base = beta.limit_part();
  std::uint64_t m = beta.finite_tail();
  Cardinal run_floor = Cardinal::aleph(limit_base);
  std::uint64_t i_min = 0;
  if (!(a < run_floor))
    i_min = Ordinal::left_difference(limit_base, a.aleph_index()).finite_value();
  for (std::uint64_t i = m + 1; i-- > i_min;) {
    Cardinal xi = Cardinal::aleph(Ordinal::sum(limit_base, Ordinal::finite(i)));
    Cardinal count = Cardinal::finite(m - i + 1);
    out.push_back(StepPiece{xi, xi, false, card_add(card_mul(v, count), tail), 0});
  }
  if (a < run_floor)
    out.push_back(StepPiece{
        a, run_floor, true, card_add(card_mul(v, Cardinal::aleph0()), tail), 0});
}

}  // namespace detail

// The weakly decreasing step function xi |-> s(>= xi) on [1, kappa], exact.
inline StepFn accumulated(const KernelProfile& p) {
  std::vector<StepPiece> desc;
  Cardinal tail = Cardinal::finite(0);
  Cardinal gap_top = p.kappa;
  bool gap_top_open = false;
  for (std::size_t i = p.segments.size(); i-- > 0;) {
    const Segment& seg = p.segments[i];
    Cardinal gap_lo = card_succ(seg.hi);
    if (gap_lo < gap_top || (gap_lo == gap_top && !gap_top_open))
      desc.push_back(StepPiece{gap_lo, gap_top, gap_top_open, tail, 0});
    detail::emit_segment_pieces(seg, tail, desc);
    tail = card_add(tail, segment_class_count(seg));
    gap_top = seg.lo;
    gap_top_open = true;
  }
  Cardinal one = Cardinal::finite(1);
  if (one < gap_top || (one == gap_top && !gap_top_open))
    desc.push_back(StepPiece{one, gap_top, gap_top_open, tail, 0});
  std::reverse(desc.begin(), desc.end());
  return StepFn(std::move(desc));
}

// ---------------------------------------------------------------------------
// Characteristic values
// ---------------------------------------------------------------------------

struct CharacteristicValues {
  Cardinal mu;             // least class size
  Cardinal sigma;          // s(mu)
  Cardinal rho;            // s(> mu)
  Cardinal nu;             // |X \ f[X]|
  Cardinal epsilon;        // sup of the support (attained on this fragment)
  Cardinal epsilon_prime;  // sup of the strong support, mu when empty
  Cardinal lambda_prime;   // sup of strong support below nu, mu when empty
  Cardinal chi;            // least xi with s(>= xi) <= some support element
  bool epsilon_attained;   // s(epsilon) > 0
  // Set when the strong support is infinite: lambda'/epsilon' then report the
  // attained maximum of the presentation, which is the fragment semantics of
  // the sup.  Such profiles fail (s'dec) and are never minimal.
  bool fragment_sup_semantics;
};

// Least xi in [1, kappa] with s(>= xi) <= epsilon, walking the exact piece
// description.  Inside an arithmetic run the flip point is solved directly;
// segment boundaries alone do not suffice because s(>= xi) drops at every
// successor there.
inline Cardinal chi_value(const StepFn& acc, const Cardinal& epsilon) {
  for (const StepPiece& p : acc.pieces()) {
    if (p.step == 0) {
      if (!(epsilon < p.value)) return p.lo;
      continue;
    }
    if (epsilon < p.value_at_top()) continue;
    if (!(epsilon < p.value)) return p.lo;
    // epsilon is finite here: an infinite epsilon matches at lo above
    std::uint64_t over = p.value.finite_value() - epsilon.finite_value();
    std::uint64_t offset = (over + p.step - 1) / p.step;
    return Cardinal::finite(p.lo.finite_value() + offset);
  }
  throw std::logic_error("chi: no qualifying threshold found");
}

inline CharacteristicValues characteristic_values(const KernelProfile& p) {
  if (p.segments.empty())
    throw std::invalid_argument("not a function profile: empty support");
  CharacteristicValues cv;
  cv.mu = p.segments.front().lo;
  cv.sigma = p.segments.front().value;
  cv.rho = sum_range(p, cv.mu, p.kappa, /*lo_strict=*/true);
  cv.nu = p.nu;
  cv.epsilon = p.segments.back().hi;
  SupportSplit split = support_split(p);
  cv.fragment_sup_semantics = false;
  for (const Segment& s : split.strong)
    if (count_cardinals_in(s.lo, s.hi).is_infinite())
      cv.fragment_sup_semantics = true;
  cv.epsilon_prime = split.strong.empty() ? cv.mu : split.strong.back().hi;
  cv.lambda_prime = cv.mu;
  bool have_lambda = false;
  for (const Segment& s : split.strong) {
    if (s.lo > p.nu) continue;
    Cardinal top = card_min(s.hi, p.nu);
    if (!have_lambda || cv.lambda_prime < top) cv.lambda_prime = top;
    have_lambda = true;
  }
  cv.chi = chi_value(accumulated(p), cv.epsilon);
  cv.epsilon_attained = !eval(p, cv.epsilon).is_zero();
  // Definitional chain; a failure here is an engine bug, not bad input.
  if (!(Cardinal::finite(1) <= cv.mu && cv.mu <= cv.lambda_prime &&
        cv.lambda_prime <= cv.epsilon_prime &&
        cv.epsilon_prime <= cv.epsilon && cv.epsilon <= p.kappa))
    throw std::logic_error("characteristic value chain violated");
  return cv;
}

}  // namespace minclone

#endif  // MINCLONE_KERNEL_PROFILE_HPP
