// Decidable structure on subsets of the naturals and partial maps between
// them, exact throughout.
//
// EPSet: an eventually periodic set - finitely many explicit members below a
// bound, a union of residue classes at and above it.  Every set the surgery
// constructions touch (kernel class families Y_xi, ranges, preimages, their
// unions and complements, even-indexed subsets) lives here.
//
// PartialMap: an injective partial self-map of the naturals given by explicit
// pairs plus affine pieces on arithmetic progressions.  The increasing
// matching of two infinite EPSets is such a map, and finitely many of them
// with complementary domains assemble into a ConcreteFunction bijection
// (verified exactly through the kernel analysis).

#ifndef MINCLONE_STRUCTURED_SETS_HPP
#define MINCLONE_STRUCTURED_SETS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "minclone/concrete_function.hpp"

namespace minclone {

class EPSet {
 public:
  // members = explicit ∪ { n >= bound : n mod period in residues };
  // bound is always a multiple of period, explicit members all < bound.
  EPSet() : bound_(0), period_(1) {}

  static EPSet make(std::vector<std::uint64_t> explicit_members,
                    std::uint64_t bound, std::uint64_t period,
                    std::vector<std::uint64_t> residues) {
    if (period == 0) throw std::invalid_argument("EPSet: period 0");
    EPSet s;
    s.period_ = period;
    s.bound_ = (bound + period - 1) / period * period;
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    s.residues_ = std::move(residues);
    // the pattern already applies on [bound, rounded bound): keep those
    // members explicitly
    for (std::uint64_t n = bound; n < s.bound_; ++n)
      if (s.contains_periodic(n)) explicit_members.push_back(n);
    std::sort(explicit_members.begin(), explicit_members.end());
    explicit_members.erase(
        std::unique(explicit_members.begin(), explicit_members.end()),
        explicit_members.end());
    for (std::uint64_t m : explicit_members) {
      if (m >= s.bound_) {
        if (!s.contains_periodic(m))
          throw std::invalid_argument("EPSet: member above bound off-pattern");
      } else {
        s.explicit_.push_back(m);
      }
    }
    return s;
  }

  static EPSet finite(std::vector<std::uint64_t> members) {
    std::uint64_t b = members.empty() ? 0 : *std::max_element(members.begin(),
                                                              members.end()) + 1;
    return make(std::move(members), b, 1, {});
  }

  static EPSet everything() { return make({}, 0, 1, {0}); }

  std::uint64_t bound() const { return bound_; }
  std::uint64_t period() const { return period_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }
  const std::vector<std::uint64_t>& explicit_members() const { return explicit_; }

  bool infinite() const { return !residues_.empty(); }
  bool empty() const { return explicit_.empty() && residues_.empty(); }

  bool contains(std::uint64_t n) const {
    if (n < bound_)
      return std::binary_search(explicit_.begin(), explicit_.end(), n);
    return contains_periodic(n);
  }

  // number of members strictly below n
  std::uint64_t rank(std::uint64_t n) const {
    if (n <= bound_)
      return std::lower_bound(explicit_.begin(), explicit_.end(), n) -
             explicit_.begin();
    std::uint64_t full = (n - bound_) / period_;
    std::uint64_t rem = (n - bound_) % period_;
    std::uint64_t inside =
        std::lower_bound(residues_.begin(), residues_.end(), rem) -
        residues_.begin();
    return explicit_.size() + full * residues_.size() + inside;
  }

  std::uint64_t size_if_finite() const {
    if (infinite()) throw std::domain_error("EPSet is infinite");
    return explicit_.size();
  }

  // i-th member, 0-based
  std::uint64_t select(std::uint64_t i) const {
    if (i < explicit_.size()) return explicit_[i];
    if (residues_.empty()) throw std::out_of_range("EPSet: index past a finite set");
    i -= explicit_.size();
    std::uint64_t block = i / residues_.size();
    std::uint64_t within = i % residues_.size();
    return bound_ + block * period_ + residues_[within];
  }

  // Same set re-expressed with the given period (a multiple) and a bound at
  // least the given one.
  EPSet aligned(std::uint64_t new_period, std::uint64_t new_bound) const {
    if (new_period % period_ != 0)
      throw std::invalid_argument("EPSet: alignment period must be a multiple");
    std::uint64_t b = std::max(new_bound, bound_);
    b = (b + new_period - 1) / new_period * new_period;
    EPSet s;
    s.period_ = new_period;
    s.bound_ = b;
    s.explicit_ = explicit_;
    for (std::uint64_t n = bound_; n < b; ++n)
      if (contains_periodic(n)) s.explicit_.push_back(n);
    for (std::uint64_t rho = 0; rho < new_period; ++rho)
      if (std::binary_search(residues_.begin(), residues_.end(), rho % period_))
        s.residues_.push_back(rho);
    return s;
  }

  EPSet complement() const {
    EPSet s;
    s.period_ = period_;
    s.bound_ = bound_;
    for (std::uint64_t n = 0; n < bound_; ++n)
      if (!std::binary_search(explicit_.begin(), explicit_.end(), n))
        s.explicit_.push_back(n);
    for (std::uint64_t rho = 0; rho < period_; ++rho)
      if (!std::binary_search(residues_.begin(), residues_.end(), rho))
        s.residues_.push_back(rho);
    return s;
  }

  static EPSet union_disjoint(const EPSet& a, const EPSet& b) {
    std::uint64_t p = detail::lcm64(a.period_, b.period_);
    std::uint64_t bound = std::max(a.bound_, b.bound_);
    EPSet aa = a.aligned(p, bound), bb = b.aligned(p, bound);
    EPSet s;
    s.period_ = p;
    s.bound_ = aa.bound_;
    std::merge(aa.explicit_.begin(), aa.explicit_.end(), bb.explicit_.begin(),
               bb.explicit_.end(), std::back_inserter(s.explicit_));
    for (std::size_t i = 1; i < s.explicit_.size(); ++i)
      if (s.explicit_[i] == s.explicit_[i - 1])
        throw std::invalid_argument("union_disjoint: overlapping members");
    std::merge(aa.residues_.begin(), aa.residues_.end(), bb.residues_.begin(),
               bb.residues_.end(), std::back_inserter(s.residues_));
    for (std::size_t i = 1; i < s.residues_.size(); ++i)
      if (s.residues_[i] == s.residues_[i - 1])
        throw std::invalid_argument("union_disjoint: overlapping residues");
    return s;
  }

  // members at even positions (0-based rank) of this set
  EPSet even_indexed() const {
    EPSet s;
    if (!infinite()) {
      std::vector<std::uint64_t> keep;
      for (std::uint64_t i = 0; i < explicit_.size(); i += 2)
        keep.push_back(explicit_[i]);
      return EPSet::finite(std::move(keep));
    }
    std::uint64_t c = residues_.size();
    // parity of block-start ranks alternates when c is odd
    std::uint64_t p = (c % 2 == 0) ? period_ : period_ * 2;
    EPSet al = aligned(p, bound_);
    s.period_ = al.period_;
    s.bound_ = al.bound_;
    for (std::uint64_t i = 0; i < al.explicit_.size(); i += 2)
      s.explicit_.push_back(al.explicit_[i]);
    std::uint64_t start_rank = al.explicit_.size();
    for (std::uint64_t i = 0; i < al.residues_.size(); ++i)
      if ((start_rank + i) % 2 == 0) s.residues_.push_back(al.residues_[i]);
    return s;
  }

 private:
  bool contains_periodic(std::uint64_t n) const {
    return std::binary_search(residues_.begin(), residues_.end(), n % period_);
  }

  std::uint64_t bound_;
  std::vector<std::uint64_t> explicit_;
  std::uint64_t period_;
  std::vector<std::uint64_t> residues_;
};

// ---------------------------------------------------------------------------
// EPSets arising from a concrete function
// ---------------------------------------------------------------------------

// Targets whose kernel class has exactly the given finite size (size >= 0;
// size 0 is the co-range).
inline EPSet targets_of_size(const ConcreteFunction& f, const TargetAnalysis& ta,
                             std::uint64_t size) {
  std::vector<std::uint64_t> expl, residues;
  for (std::uint64_t y = 0; y < ta.bound; ++y)
    if (ta.explicit_size[y] == size) expl.push_back(y);
  for (std::uint64_t rho = 0; rho < ta.period; ++rho)
    if (ta.residue_count[rho] == size) residues.push_back(rho);
  (void)f;
  return EPSet::make(std::move(expl), ta.bound, ta.period, std::move(residues));
}

// Targets with class size strictly above the given finite size (infinite
// classes included).
inline EPSet targets_above_size(const ConcreteFunction& f,
                                const TargetAnalysis& ta, std::uint64_t size) {
  std::vector<std::uint64_t> expl, residues;
  for (std::uint64_t y = 0; y < ta.bound; ++y)
    if (ta.explicit_size[y] > size) expl.push_back(y);  // kInfinite counts
  for (std::uint64_t rho = 0; rho < ta.period; ++rho)
    if (ta.residue_count[rho] > size) residues.push_back(rho);
  (void)f;
  return EPSet::make(std::move(expl), ta.bound, ta.period, std::move(residues));
}

// { n : f(n) in S }, exact.
inline EPSet preimage_set(const ConcreteFunction& f, const EPSet& s) {
  std::uint64_t period = 1;
  for (std::uint64_t r = 0; r < f.modulus(); ++r) {
    const ResidueRule& rule = f.rules()[r];
    if (rule.kind == ResidueRule::Kind::Affine)
      period = detail::lcm64(period,
                             f.modulus() * (s.period() / std::gcd(rule.stride, s.period())));
    else
      period = detail::lcm64(period, f.modulus());
  }
  if (period > (1u << 22))
    throw std::logic_error("preimage_set: period structure too large");
  // beyond this point every affine rule produces values >= s.bound()
  std::uint64_t n_hi = f.prefix_size();
  for (std::uint64_t r = 0; r < f.modulus(); ++r) {
    const ResidueRule& rule = f.rules()[r];
    if (rule.kind != ResidueRule::Kind::Affine) continue;
    std::uint64_t v = f.rule_start_value(r);
    std::uint64_t n = f.first_applicable(r);
    while (v < s.bound()) {
      v += rule.stride;
      n += f.modulus();
    }
    n_hi = std::max(n_hi, n);
  }
  std::uint64_t bound = (n_hi + period - 1) / period * period;
  std::vector<std::uint64_t> expl, residues;
  for (std::uint64_t n = 0; n < bound; ++n)
    if (s.contains(f.apply(n))) expl.push_back(n);
  for (std::uint64_t rho = 0; rho < period; ++rho) {
    // witness point in the class at or above the bound
    std::uint64_t n = bound + rho;
    if (s.contains(f.apply(n))) residues.push_back(rho);
  }
  return EPSet::make(std::move(expl), bound, period, std::move(residues));
}

// ---------------------------------------------------------------------------
// Partial piecewise-affine maps
// ---------------------------------------------------------------------------

struct MapPiece {
  std::uint64_t first;       // least domain point
  std::uint64_t period;      // domain step
  std::uint64_t image_first;
  std::uint64_t image_step;  // image advance per domain step

  bool covers(std::uint64_t n) const {
    return n >= first && (n - first) % period == 0;
  }
  std::uint64_t at(std::uint64_t n) const {
    return image_first + image_step * ((n - first) / period);
  }
};

struct PartialMap {
  std::map<std::uint64_t, std::uint64_t> explicit_pairs;
  std::vector<MapPiece> pieces;

  bool defined_at(std::uint64_t n) const {
    if (explicit_pairs.count(n)) return true;
    for (const MapPiece& p : pieces)
      if (p.covers(n)) return true;
    return false;
  }
  std::uint64_t at(std::uint64_t n) const {
    auto it = explicit_pairs.find(n);
    if (it != explicit_pairs.end()) return it->second;
    for (const MapPiece& p : pieces)
      if (p.covers(n)) return p.at(n);
    throw std::out_of_range("PartialMap: undefined point " + std::to_string(n));
  }
};

namespace detail {
inline std::int64_t floordiv(std::int64_t a, std::int64_t b) {  // b > 0
  std::int64_t q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}
inline std::int64_t ceildiv(std::int64_t a, std::int64_t b) {  // b > 0
  return -floordiv(-a, b);
}
}  // namespace detail

// The order-preserving bijection from A onto B (i-th member to i-th member).
// Both sets must be infinite, or both finite of equal size.
inline PartialMap match_increasing(const EPSet& a_in, const EPSet& b_in) {
  PartialMap out;
  if (!a_in.infinite() || !b_in.infinite()) {
    if (a_in.infinite() != b_in.infinite() ||
        a_in.size_if_finite() != b_in.size_if_finite())
      throw std::invalid_argument("match_increasing: size mismatch");
    for (std::uint64_t i = 0; i < a_in.size_if_finite(); ++i)
      out.explicit_pairs[a_in.select(i)] = b_in.select(i);
    return out;
  }
  const std::uint64_t P = detail::lcm64(a_in.period(), b_in.period());
  EPSet A = a_in.aligned(P, std::max(a_in.bound(), b_in.bound()));
  EPSet B = b_in.aligned(P, std::max(a_in.bound(), b_in.bound()));
  const std::uint64_t H = A.bound();  // both round to the same multiple of P
  if (B.bound() != H)
    throw std::logic_error("match_increasing: alignment bounds diverged");
  const std::int64_t EA = static_cast<std::int64_t>(A.explicit_members().size());
  const std::int64_t EB = static_cast<std::int64_t>(B.explicit_members().size());
  const std::uint64_t a = A.residues().size();
  const std::uint64_t b = B.residues().size();
  const std::uint64_t g = std::gcd(a, b);
  const std::uint64_t d = b / g;
  // block index q of the A side must give a global rank >= EB
  const std::int64_t Q0 =
      std::max<std::int64_t>(0, detail::ceildiv(EB - EA, static_cast<std::int64_t>(a)));

  std::uint64_t max_first = 0;
  for (std::uint64_t s = 0; s < a; ++s) {
    for (std::uint64_t e = 0; e < d; ++e) {
      std::int64_t m0 = std::max<std::int64_t>(
          0, detail::ceildiv(Q0 - static_cast<std::int64_t>(e),
                             static_cast<std::int64_t>(d)));
      // q = e + d*m, global rank i = EA + q*a + s
      std::int64_t q_at_m0 = static_cast<std::int64_t>(e) + static_cast<std::int64_t>(d) * m0;
      std::int64_t i0 = EA + q_at_m0 * static_cast<std::int64_t>(a) +
                        static_cast<std::int64_t>(s);
      std::int64_t ib = i0 - EB;
      std::uint64_t t = static_cast<std::uint64_t>(
          ((ib % static_cast<std::int64_t>(b)) + static_cast<std::int64_t>(b)) %
          static_cast<std::int64_t>(b));
      std::int64_t qb0 = (ib - static_cast<std::int64_t>(t)) /
                         static_cast<std::int64_t>(b);
      MapPiece piece;
      piece.first = H + static_cast<std::uint64_t>(q_at_m0) * P + A.residues()[s];
      piece.period = d * P;
      piece.image_first = H + static_cast<std::uint64_t>(qb0) * P + B.residues()[t];
      piece.image_step = (a / g) * P;
      max_first = std::max(max_first, piece.first);
      out.pieces.push_back(piece);
    }
  }
  // Everything below the piece starts is matched explicitly.
  for (std::uint64_t i = 0;; ++i) {
    std::uint64_t n = A.select(i);
    if (n > max_first) break;
    bool covered = false;
    for (const MapPiece& p : out.pieces) covered |= p.covers(n);
    if (!covered) out.explicit_pairs[n] = B.select(i);
  }
  // spot-verify the algebra against direct rank matching
  for (std::uint64_t i = 0; i < 64; ++i) {
    std::uint64_t n = A.select(i);
    if (!(out.at(n) == B.select(i)))
      throw std::logic_error("match_increasing: algebra disagrees with ranks");
  }
  return out;
}

namespace detail {
// least t >= t_min with step * t = rhs (mod m); nullopt when unsolvable
inline std::optional<std::uint64_t> solve_congruence(std::uint64_t step,
                                                     std::uint64_t rhs,
                                                     std::uint64_t m,
                                                     std::uint64_t t_min) {
  std::uint64_t g = std::gcd(step, m);
  if (rhs % g != 0) return std::nullopt;
  std::uint64_t m2 = m / g, s2 = (step / g) % m2, r2 = (rhs / g) % m2;
  // modular inverse of s2 mod m2 by extended gcd
  std::int64_t a = static_cast<std::int64_t>(s2), b = static_cast<std::int64_t>(m2);
  std::int64_t x0 = 1, x1 = 0;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t tmp = a - q * b; a = b; b = tmp;
    tmp = x0 - q * x1; x0 = x1; x1 = tmp;
  }
  std::uint64_t inv = static_cast<std::uint64_t>(((x0 % static_cast<std::int64_t>(m2)) +
                                                  static_cast<std::int64_t>(m2)) %
                                                 static_cast<std::int64_t>(m2));
  std::uint64_t t0 = m2 == 1 ? 0 : static_cast<std::uint64_t>(
                                       (unsigned __int128)r2 * inv % m2);
  if (t0 >= t_min) return t0;
  std::uint64_t deficit = t_min - t0;
  return t0 + (deficit + m2 - 1) / m2 * m2;
}
}  // namespace detail

// outer after inner; the inner map's image must lie inside the outer map's
// domain.
inline PartialMap compose_partial(const PartialMap& outer, const PartialMap& inner) {
  PartialMap out;
  for (const auto& [n, v] : inner.explicit_pairs)
    out.explicit_pairs[n] = outer.at(v);
  std::uint64_t t_star = 0;
  for (const MapPiece& p : outer.pieces) t_star = std::max(t_star, p.first);
  for (const auto& [k, v] : outer.explicit_pairs) {
    (void)v;
    t_star = std::max(t_star, k + 1);
  }
  for (const MapPiece& ip : inner.pieces) {
    std::uint64_t t = 0;
    while (ip.image_first + ip.image_step * t < t_star) {
      std::uint64_t n = ip.first + ip.period * t;
      out.explicit_pairs[n] = outer.at(ip.at(n));
      ++t;
    }
    std::uint64_t t_base = t;
    for (const MapPiece& op : outer.pieces) {
      // ip.image_first + ip.image_step * t  in op's progression
      std::uint64_t rhs =
          mod_floor(static_cast<std::int64_t>(op.first % op.period) -
                        static_cast<std::int64_t>(ip.image_first % op.period),
                    op.period);
      auto t0 = detail::solve_congruence(ip.image_step % op.period, rhs,
                                         op.period, t_base);
      if (!t0) continue;
      std::uint64_t g = std::gcd(ip.image_step, op.period);
      std::uint64_t cycle = op.period / g;
      MapPiece piece;
      piece.first = ip.first + ip.period * *t0;
      piece.period = ip.period * cycle;
      std::uint64_t v0 = ip.at(piece.first);
      piece.image_first = op.at(v0);
      piece.image_step = op.image_step * (ip.image_step / g);
      out.pieces.push_back(piece);
    }
  }
  // spot-verify against direct evaluation
  int checked = 0;
  for (const MapPiece& ip : inner.pieces) {
    for (std::uint64_t t = 0; t < 24 && checked < 96; ++t, ++checked) {
      std::uint64_t n = ip.first + ip.period * t;
      if (!(out.at(n) == outer.at(inner.at(n))))
        throw std::logic_error("compose_partial: disagreement at " +
                               std::to_string(n));
    }
  }
  return out;
}

// Inverse of an injective partial map whose pieces have strictly increasing
// images.
inline PartialMap inverse_partial(const PartialMap& m) {
  PartialMap out;
  for (const auto& [n, v] : m.explicit_pairs) {
    if (out.explicit_pairs.count(v))
      throw std::logic_error("inverse_partial: duplicate image");
    out.explicit_pairs[v] = n;
  }
  for (const MapPiece& p : m.pieces) {
    if (p.image_step == 0)
      throw std::invalid_argument("inverse_partial: constant piece");
    out.pieces.push_back(MapPiece{p.image_first, p.image_step, p.first, p.period});
  }
  return out;
}

// Image of a partial map as an EPSet; throws if the image is not cleanly
// eventually periodic with respect to the pieces' progressions.
inline EPSet image_set(const PartialMap& m) {
  std::uint64_t period = 1;
  std::uint64_t bound = 0;
  for (const MapPiece& p : m.pieces) {
    if (p.image_step == 0) throw std::invalid_argument("image_set: constant piece");
    period = detail::lcm64(period, p.image_step);
    bound = std::max(bound, p.image_first);
  }
  for (const auto& [n, v] : m.explicit_pairs) bound = std::max(bound, v + 1);
  bound = (bound + period - 1) / period * period;
  std::vector<std::uint64_t> expl, residues;
  for (const auto& [n, v] : m.explicit_pairs) {
    (void)n;
    if (v < bound) expl.push_back(v);
  }
  for (const MapPiece& p : m.pieces) {
    std::uint64_t v = p.image_first;
    while (v < bound) {
      expl.push_back(v);
      v += p.image_step;
    }
    // image_step divides the common period, so the progression occupies
    // period / image_step residues
    for (std::uint64_t i = 0; i < period / p.image_step; ++i)
      residues.push_back((v + i * p.image_step) % period);
  }
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  return EPSet::make(std::move(expl), bound, period, std::move(residues));
}

// Assembles disjoint partial maps covering all of N into a bijection in the
// concrete class.  Exactness is certified by the kernel analysis of the
// result: a bijection is precisely a function with profile s(1) = aleph_0,
// nu = 0.
inline ConcreteFunction assemble_bijection(const std::vector<PartialMap>& parts) {
  std::uint64_t K = 1, N = 0;
  for (const PartialMap& pm : parts) {
    for (const MapPiece& p : pm.pieces) {
      K = detail::lcm64(K, p.period);
      N = std::max(N, p.first + 1);
    }
    for (const auto& [n, v] : pm.explicit_pairs) {
      (void)v;
      N = std::max(N, n + 1);
    }
  }
  N = (N + K - 1) / K * K;
  std::vector<ResidueRule> rules(K);
  for (std::uint64_t rho = 0; rho < K; ++rho) {
    const MapPiece* owner = nullptr;
    for (const PartialMap& pm : parts)
      for (const MapPiece& p : pm.pieces)
        if (p.covers(N + rho)) {
          if (owner) throw std::logic_error("assemble_bijection: overlapping pieces");
          owner = &p;
        }
    if (!owner) throw std::logic_error("assemble_bijection: uncovered class");
    // value(n) = image_first + image_step*((n - first)/period)
    //          = base + stride*((n - rho)/K) on the class of rho;
    // anchor via the value at the first class point past the prefix
    std::uint64_t stride = owner->image_step * (K / owner->period);
    std::uint64_t n0 = N + rho;
    std::uint64_t v0 = owner->at(n0);
    std::uint64_t u0 = (n0 - rho) / K;
    std::int64_t base = static_cast<std::int64_t>(v0) -
                        static_cast<std::int64_t>(stride * u0);
    rules[rho] = ResidueRule::affine(base, stride);
  }
  std::vector<std::uint64_t> prefix(N);
  for (std::uint64_t n = 0; n < N; ++n) {
    bool found = false;
    for (const PartialMap& pm : parts) {
      if (pm.defined_at(n)) {
        if (found) throw std::logic_error("assemble_bijection: overlap at " +
                                          std::to_string(n));
        prefix[n] = pm.at(n);
        found = true;
      }
    }
    if (!found)
      throw std::logic_error("assemble_bijection: gap at " + std::to_string(n));
  }
  ConcreteFunction alpha =
      ConcreteFunction::make(std::move(prefix), K, std::move(rules)).normalized();
  KernelProfile prof = kernel_profile(alpha);
  bool perm = prof.nu.is_zero() && prof.segments.size() == 1 &&
              prof.segments[0].lo == Cardinal::finite(1) &&
              prof.segments[0].hi == Cardinal::finite(1);
  if (!perm) throw std::logic_error("assemble_bijection: result is not a bijection");
  return alpha;
}

}  // namespace minclone

#endif  // MINCLONE_STRUCTURED_SETS_HPP
