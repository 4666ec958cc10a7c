// Ordinals below epsilon_0 in Cantor normal form.
//
// An ordinal is a sum  w^e1*c1 + w^e2*c2 + ... + w^ek*ck  with e1 > e2 > ...
// (exponents are themselves ordinals) and all coefficients >= 1.  The empty
// sum is 0.  This gives a canonical, decidable representation: comparison is
// lexicographic on the term list and addition absorbs small left summands.
//
// Text grammar (round-trips bit-exactly through parse/print):
//   ordinal := "0" | term ("+" term)*
//   term    := nat | "w" ["^" atom] ["*" nat]
//   atom    := nat | "w" | "(" ordinal ")"
// so "w", "w*3", "w^2", "w^(w+1)*4", "w^w+w*2+5" are all valid.

#ifndef MINCLONE_ORDINAL_HPP
#define MINCLONE_ORDINAL_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minclone {

class Ordinal {
 public:
  struct Term;

  Ordinal() = default;

  // Finite ordinal n (single term w^0*n, or 0).
  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  // Value of a finite ordinal; throws otherwise.
  std::uint64_t finite_value() const;

  // A successor ordinal ends in a w^0 term; 0 is neither successor nor limit.
  bool is_successor() const;
  bool is_limit() const { return !is_zero() && !is_successor(); }

  // The ordinal with the trailing finite part removed, and that part itself:
  // a = limit_part() + finite_tail().  Used for successor-distance walks.
  Ordinal limit_part() const;
  std::uint64_t finite_tail() const;

  static Ordinal sum(const Ordinal& a, const Ordinal& b);
  // Unique d with a + d = b, for a <= b; throws if a > b.
  static Ordinal left_difference(const Ordinal& a, const Ordinal& b);
  static std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

  std::string to_string() const;
  static Ordinal parse(std::string_view text);

  // Builds w^exponent * coeff + rest; validates CNF ordering.
  static Ordinal make(std::vector<Term> terms);

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coeff = 1;
};

inline std::strong_ordering Ordinal::compare(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms_;
  const auto& tb = b.terms_;
  for (std::size_t i = 0; i < ta.size() && i < tb.size(); ++i) {
    auto c = compare(ta[i].exponent, tb[i].exponent);
    if (c != std::strong_ordering::equal) return c;
    if (ta[i].coeff != tb[i].coeff)
      return ta[i].coeff <=> tb[i].coeff;
  }
  return ta.size() <=> tb.size();
}

inline bool operator==(const Ordinal& a, const Ordinal& b) {
  return Ordinal::compare(a, b) == std::strong_ordering::equal;
}
inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  return Ordinal::compare(a, b);
}

inline Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal r;
  if (n > 0) r.terms_.push_back(Term{Ordinal(), n});
  return r;
}

inline Ordinal Ordinal::omega() {
  Ordinal r;
  r.terms_.push_back(Term{finite(1), 1});
  return r;
}

inline bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

inline std::uint64_t Ordinal::finite_value() const {
  if (terms_.empty()) return 0;
  if (!is_finite()) throw std::domain_error("ordinal is not finite");
  return terms_[0].coeff;
}

inline bool Ordinal::is_successor() const {
  return !terms_.empty() && terms_.back().exponent.is_zero();
}

inline Ordinal Ordinal::limit_part() const {
  Ordinal r = *this;
  if (r.is_successor()) r.terms_.pop_back();
  return r;
}

inline std::uint64_t Ordinal::finite_tail() const {
  return is_successor() ? terms_.back().coeff : 0;
}

inline Ordinal Ordinal::make(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coeff == 0)
      throw std::invalid_argument("CNF coefficient must be >= 1");
    if (i + 1 < terms.size() &&
        compare(terms[i].exponent, terms[i + 1].exponent) !=
            std::strong_ordering::greater)
      throw std::invalid_argument("CNF exponents must strictly decrease");
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

inline Ordinal Ordinal::sum(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms_[0].exponent;
  std::vector<Term> out;
  for (const Term& t : a.terms_) {
    auto c = compare(t.exponent, lead);
    if (c == std::strong_ordering::greater) {
      out.push_back(t);
    } else if (c == std::strong_ordering::equal) {
      out.push_back(Term{t.exponent, t.coeff + b.terms_[0].coeff});
      out.insert(out.end(), b.terms_.begin() + 1, b.terms_.end());
      Ordinal r;
      r.terms_ = std::move(out);
      return r;
    } else {
      break;  // absorbed
    }
  }
  out.insert(out.end(), b.terms_.begin(), b.terms_.end());
  Ordinal r;
  r.terms_ = std::move(out);
  return r;
}

inline Ordinal Ordinal::left_difference(const Ordinal& a, const Ordinal& b) {
  if (compare(a, b) == std::strong_ordering::greater)
    throw std::invalid_argument("left_difference requires a <= b");
  const auto& ta = a.terms_;
  const auto& tb = b.terms_;
  std::size_t i = 0;
  while (i < ta.size() && i < tb.size()) {
    if (!(ta[i].exponent == tb[i].exponent)) break;
    if (ta[i].coeff != tb[i].coeff) break;
    ++i;
  }
  std::vector<Term> out;
  if (i == ta.size()) {
    // a is a prefix of b; the difference is b's remainder.
    out.assign(tb.begin() + i, tb.end());
  } else if (i < tb.size() && ta[i].exponent == tb[i].exponent &&
             ta[i].coeff < tb[i].coeff) {
    out.push_back(Term{tb[i].exponent, tb[i].coeff - ta[i].coeff});
    out.insert(out.end(), tb.begin() + i + 1, tb.end());
  } else {
    // First divergent term of b is larger; everything before it in a is
    // absorbed by it.
    out.assign(tb.begin() + i, tb.end());
  }
  Ordinal r;
  r.terms_ = std::move(out);
  return r;
}

namespace detail {

inline void print_ordinal(const Ordinal& o, std::string& out) {
  if (o.is_zero()) {
    out += '0';
    return;
  }
  bool first = true;
  for (const Ordinal::Term& t : o.terms()) {
    if (!first) out += '+';
    first = false;
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coeff);
      continue;
    }
    out += 'w';
    if (!(t.exponent == Ordinal::finite(1))) {
      out += '^';
      if (t.exponent.is_finite()) {
        out += std::to_string(t.exponent.finite_value());
      } else if (t.exponent == Ordinal::omega()) {
        out += 'w';
      } else {
        out += '(';
        print_ordinal(t.exponent, out);
        out += ')';
      }
    }
    if (t.coeff != 1) {
      out += '*';
      out += std::to_string(t.coeff);
    }
  }
}

struct OrdinalParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("ordinal parse error at column " +
                                std::to_string(pos + 1) + ": " + what +
                                " in \"" + std::string(text) + "\"");
  }
  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::uint64_t parse_nat() {
    skip_ws();
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
      fail("expected a natural number");
    std::uint64_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      std::uint64_t d = static_cast<std::uint64_t>(text[pos] - '0');
      if (v > (UINT64_MAX - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos;
    }
    return v;
  }

  Ordinal parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("expected exponent");
    if (text[pos] == '(') {
      ++pos;
      Ordinal inner = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (text[pos] == 'w') {
      ++pos;
      return Ordinal::omega();
    }
    return Ordinal::finite(parse_nat());
  }

  Ordinal::Term parse_term() {
    skip_ws();
    if (pos >= text.size()) fail("expected a term");
    if (text[pos] != 'w') {
      std::uint64_t n = parse_nat();
      if (n == 0) fail("zero term inside a sum");
      return Ordinal::Term{Ordinal(), n};
    }
    ++pos;
    Ordinal exponent = Ordinal::finite(1);
    if (eat('^')) exponent = parse_atom();
    std::uint64_t coeff = 1;
    if (eat('*')) {
      coeff = parse_nat();
      if (coeff == 0) fail("coefficient must be >= 1");
    }
    return Ordinal::Term{std::move(exponent), coeff};
  }

  Ordinal parse_sum() {
    std::vector<Ordinal::Term> terms;
    terms.push_back(parse_term());
    while (eat('+')) terms.push_back(parse_term());
    return Ordinal::make(std::move(terms));
  }

  Ordinal run() {
    skip_ws();
    if (pos < text.size() && text[pos] == '0') {
      ++pos;
      skip_ws();
      if (pos != text.size()) fail("trailing input after 0");
      return Ordinal();
    }
    Ordinal r = parse_sum();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return r;
  }
};

}  // namespace detail

inline std::string Ordinal::to_string() const {
  std::string out;
  detail::print_ordinal(*this, out);
  return out;
}

inline Ordinal Ordinal::parse(std::string_view text) {
  detail::OrdinalParser p{text};
  return p.run();
}

}  // namespace minclone

#endif  // MINCLONE_ORDINAL_HPP
