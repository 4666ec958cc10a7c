// Cardinal numbers: finite naturals and alephs indexed by ordinals below
// epsilon_0.  Everything the calculus needs is here: the total order,
// absorption arithmetic, successors, cofinality/regularity, and exact
// counting and summation of cardinals over closed intervals.
//
// Literal grammar: "fin:<n>" or "aleph(<ordinal>)", e.g. fin:7, aleph(0),
// aleph(w+1).  parse(print(x)) == x.
//
// Deliberately absent: cardinal exponentiation.  Sums, products and suprema
// are ZFC-absolute on this fragment, so no independence phenomena can enter.

#ifndef MINCLONE_CARDINAL_HPP
#define MINCLONE_CARDINAL_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "minclone/ordinal.hpp"

namespace minclone {

class Cardinal {
 public:
  Cardinal() : finite_(true), n_(0) {}

  static Cardinal finite(std::uint64_t n) { return Cardinal(n); }
  static Cardinal aleph(Ordinal index) { return Cardinal(std::move(index)); }
  static Cardinal aleph0() { return aleph(Ordinal()); }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }
  bool is_zero() const { return finite_ && n_ == 0; }

  std::uint64_t finite_value() const {
    if (!finite_) throw std::domain_error("cardinal is infinite");
    return n_;
  }
  const Ordinal& aleph_index() const {
    if (finite_) throw std::domain_error("cardinal is finite");
    return index_;
  }

  static std::strong_ordering compare(const Cardinal& a, const Cardinal& b) {
    if (a.finite_ != b.finite_)
      return a.finite_ ? std::strong_ordering::less
                       : std::strong_ordering::greater;
    if (a.finite_) return a.n_ <=> b.n_;
    return Ordinal::compare(a.index_, b.index_);
  }

  std::string to_string() const {
    if (finite_) return "fin:" + std::to_string(n_);
    return "aleph(" + index_.to_string() + ")";
  }

  static Cardinal parse(std::string_view text);

 private:
  explicit Cardinal(std::uint64_t n) : finite_(true), n_(n) {}
  explicit Cardinal(Ordinal index)
      : finite_(false), n_(0), index_(std::move(index)) {}

  bool finite_;
  std::uint64_t n_;
  Ordinal index_;
};

inline bool operator==(const Cardinal& a, const Cardinal& b) {
  return Cardinal::compare(a, b) == std::strong_ordering::equal;
}
inline std::strong_ordering operator<=>(const Cardinal& a, const Cardinal& b) {
  return Cardinal::compare(a, b);
}

namespace detail {
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) throw std::overflow_error("finite cardinal overflow");
  return a + b;
}
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a)
    throw std::overflow_error("finite cardinal overflow");
  return a * b;
}
}  // namespace detail

inline Cardinal card_max(const Cardinal& a, const Cardinal& b) {
  return a < b ? b : a;
}
inline Cardinal card_min(const Cardinal& a, const Cardinal& b) {
  return a < b ? a : b;
}

// Natural addition below aleph_0, max above.
inline Cardinal card_add(const Cardinal& a, const Cardinal& b) {
  if (a.is_finite() && b.is_finite())
    return Cardinal::finite(detail::checked_add(a.finite_value(), b.finite_value()));
  return card_max(a, b);
}

// Natural product below aleph_0, max above; 0 annihilates.
inline Cardinal card_mul(const Cardinal& a, const Cardinal& b) {
  if (a.is_zero() || b.is_zero()) return Cardinal::finite(0);
  if (a.is_finite() && b.is_finite())
    return Cardinal::finite(detail::checked_mul(a.finite_value(), b.finite_value()));
  return card_max(a, b);
}

inline Cardinal card_succ(const Cardinal& a) {
  if (a.is_finite()) return Cardinal::finite(detail::checked_add(a.finite_value(), 1));
  return Cardinal::aleph(Ordinal::sum(a.aleph_index(), Ordinal::finite(1)));
}

// Cofinality.  On indices below epsilon_0 every limit ordinal has a countable
// cofinal sequence, so limit-index alephs all have cofinality aleph_0; the
// consequence (documented in the README) is that no representable aleph is
// weakly inaccessible.
inline Cardinal cofinality(const Cardinal& a) {
  if (a.is_finite())
    throw std::domain_error("cofinality undefined for finite cardinals");
  const Ordinal& idx = a.aleph_index();
  if (idx.is_zero()) return Cardinal::aleph0();
  if (idx.is_successor()) return a;
  return Cardinal::aleph0();
}

inline bool is_regular(const Cardinal& a) { return cofinality(a) == a; }
inline bool is_singular(const Cardinal& a) { return !is_regular(a); }

// Number of cardinals x with lo <R1 x <R2 hi, where <Ri is < or <= as
// selected by the strictness flags.  An empty interval counts 0.
inline Cardinal count_cardinals_in(Cardinal lo, const Cardinal& hi,
                                   bool lo_strict = false,
                                   bool hi_strict = false) {
  if (lo_strict) lo = card_succ(lo);
  if (lo > hi || (lo == hi && hi_strict)) return Cardinal::finite(0);
  if (hi.is_finite()) {
    std::uint64_t h = hi.finite_value() - (hi_strict ? 1 : 0);
    std::uint64_t l = lo.finite_value();
    return l > h ? Cardinal::finite(0) : Cardinal::finite(h - l + 1);
  }
  // Infinitely many naturals sit above any finite lower bound.
  if (lo.is_finite()) return Cardinal::aleph0();
  const Ordinal& g = lo.aleph_index();
  const Ordinal& b = hi.aleph_index();
  Ordinal d = Ordinal::left_difference(g, b);
  if (!d.is_finite()) return Cardinal::aleph0();
  std::uint64_t m = d.finite_value() + (hi_strict ? 0 : 1);
  return m == 0 ? Cardinal::finite(0) : Cardinal::finite(m);
}

// Sum of all cardinals in the closed interval [lo, hi].  The supremum hi is
// attained, so the infinite case is max(hi, |interval|).
inline Cardinal sum_of_cardinals_in(const Cardinal& lo, const Cardinal& hi) {
  if (lo > hi) return Cardinal::finite(0);
  if (hi.is_finite()) {
    unsigned __int128 l = lo.finite_value(), h = hi.finite_value();
    unsigned __int128 s = (l + h) * (h - l + 1) / 2;
    if (s > UINT64_MAX) throw std::overflow_error("finite cardinal overflow");
    return Cardinal::finite(static_cast<std::uint64_t>(s));
  }
  return card_max(hi, count_cardinals_in(lo, hi));
}

inline Cardinal Cardinal::parse(std::string_view text) {
  auto strip = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
      s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
      s.remove_suffix(1);
    return s;
  };
  std::string_view s = strip(text);
  if (s.rfind("fin:", 0) == 0) {
    std::string_view num = strip(s.substr(4));
    if (num.empty()) throw std::invalid_argument("cardinal parse error: empty finite value");
    std::uint64_t v = 0;
    for (char c : num) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("cardinal parse error: bad digit in \"" +
                                    std::string(text) + "\"");
      std::uint64_t d = static_cast<std::uint64_t>(c - '0');
      if (v > (UINT64_MAX - d) / 10)
        throw std::invalid_argument("cardinal parse error: value too large");
      v = v * 10 + d;
    }
    return Cardinal::finite(v);
  }
  if (s.rfind("aleph(", 0) == 0 && !s.empty() && s.back() == ')') {
    return Cardinal::aleph(Ordinal::parse(s.substr(6, s.size() - 7)));
  }
  throw std::invalid_argument("cardinal parse error: expected fin:<n> or aleph(<ord>), got \"" +
                              std::string(text) + "\"");
}

}  // namespace minclone

#endif  // MINCLONE_CARDINAL_HPP
