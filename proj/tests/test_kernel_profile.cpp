#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "minclone/kernel_profile.hpp"

using namespace minclone;

namespace {

Cardinal fin(std::uint64_t n) { return Cardinal::finite(n); }
Cardinal al0() { return Cardinal::aleph0(); }
Cardinal aleph(const char* idx) { return Cardinal::aleph(Ordinal::parse(idx)); }

KernelProfile profile(Cardinal kappa, Cardinal nu,
                      std::vector<Segment> segs) {
  return canonicalize(KernelProfile{kappa, nu, std::move(segs)});
}

KernelProfile i_profile(std::uint64_t nu) {  // all classes infinite, nu holes
  return profile(al0(), fin(nu), {{al0(), al0(), al0()}});
}
KernelProfile h_profile() {  // injective, co-infinite
  return profile(al0(), al0(), {{fin(1), fin(1), al0()}});
}
KernelProfile const_profile(Cardinal kappa) {
  return profile(kappa, kappa, {{kappa, kappa, fin(1)}});
}
KernelProfile perm_profile() {
  return profile(al0(), fin(0), {{fin(1), fin(1), al0()}});
}

// Valid countable profiles sampled from small segment data; rejection
// sampling against validate keeps exactly the lawful ones.
std::vector<KernelProfile> random_valid_profiles(std::size_t want,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Cardinal> pool;
  for (std::uint64_t i = 1; i <= 8; ++i) pool.push_back(fin(i));
  pool.push_back(al0());
  std::vector<KernelProfile> out;
  while (out.size() < want) {
    KernelProfile p;
    p.kappa = al0();
    p.nu = rng() % 2 ? al0() : fin(rng() % 9);
    std::size_t segs = 1 + rng() % 3;
    for (std::size_t i = 0; i < segs; ++i) {
      Cardinal a = pool[rng() % pool.size()];
      Cardinal b = pool[rng() % pool.size()];
      if (b < a) std::swap(a, b);
      p.segments.push_back({a, b, pool[rng() % pool.size()]});
    }
    p = canonicalize(std::move(p));
    if (is_valid(p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

TEST_CASE("validate accepts lawful profiles and names broken laws") {
  CHECK(validate(perm_profile()).empty());
  CHECK(validate(i_profile(2)).empty());

  KernelProfile bad = profile(al0(), fin(0), {{fin(2), fin(2), fin(3)}});
  auto v = validate(bad);
  REQUIRE_FALSE(v.empty());
  bool mass = false;
  for (const auto& viol : v) mass |= viol.law == "mass law";
  CHECK(mass);

  KernelProfile overlap{al0(), al0(),
                        {{fin(1), fin(3), al0()}, {fin(2), fin(4), fin(1)}}};
  v = validate(overlap);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().law == "order");
}

TEST_CASE("eval reads the presentation") {
  KernelProfile p = profile(al0(), al0(),
                            {{fin(1), fin(1), al0()}, {fin(2), fin(5), fin(1)}});
  CHECK(eval(p, fin(3)) == fin(1));
  CHECK(eval(p, al0()) == fin(0));
  CHECK(eval(const_profile(al0()), al0()) == fin(1));
  CHECK_THROWS_AS(eval(p, fin(0)), std::invalid_argument);
  CHECK_THROWS_AS(eval(p, aleph("1")), std::invalid_argument);
}

TEST_CASE("sum_range sums the kernel sequence over cardinal ranges") {
  KernelProfile p = profile(al0(), al0(),
                            {{fin(1), fin(1), al0()}, {fin(2), fin(5), fin(1)}});
  CHECK(sum_range(p, fin(1), p.kappa, true) == fin(4));        // s(>1)
  CHECK(sum_range(i_profile(2), fin(1), al0()) == al0());      // s(>=1)
  CHECK(sum_range(i_profile(2), al0(), al0(), true) == fin(0));  // empty
}

TEST_CASE("strong support splits segments against nu") {
  SupportSplit s = support_split(i_profile(2));
  REQUIRE(s.strong.size() == 1);
  CHECK(s.strong[0] == Segment{al0(), al0(), al0()});
  CHECK(s.weak.empty());

  s = support_split(h_profile());
  CHECK(s.strong.empty());
  REQUIRE(s.weak.size() == 1);

  KernelProfile nu0 = profile(al0(), fin(0),
                              {{fin(1), fin(1), al0()}, {fin(2), fin(2), al0()}});
  s = support_split(nu0);  // canonical form merges the two adjacent segments
  CHECK(s.weak.empty());
  REQUIRE(s.strong.size() == 1);
  CHECK(s.strong[0] == Segment{fin(1), fin(2), al0()});

  // mid-segment split: nu = 4, value 2: 2*xi > 4 first at xi = 3
  KernelProfile mid = profile(al0(), fin(4),
                              {{fin(2), fin(5), fin(2)}, {al0(), al0(), al0()}});
  s = support_split(mid);
  REQUIRE(s.weak.size() == 1);
  REQUIRE(s.strong.size() == 2);
  CHECK(s.weak[0] == Segment{fin(2), fin(2), fin(2)});
  CHECK(s.strong[0] == Segment{fin(3), fin(5), fin(2)});
}

TEST_CASE("characteristic values on the worked examples") {
  // mu=1, sigma=aleph0, rho=5, eps=2, strong support empty, chi=3
  KernelProfile a = profile(al0(), al0(),
                            {{fin(1), fin(1), al0()}, {fin(2), fin(2), fin(5)}});
  CharacteristicValues cv = characteristic_values(a);
  CHECK(cv.mu == fin(1));
  CHECK(cv.sigma == al0());
  CHECK(cv.rho == fin(5));
  CHECK(cv.epsilon == fin(2));
  CHECK(cv.epsilon_prime == fin(1));
  CHECK(cv.lambda_prime == fin(1));
  CHECK(cv.chi == fin(3));
  CHECK(cv.epsilon_attained);

  cv = characteristic_values(i_profile(2));
  CHECK(cv.mu == al0());
  CHECK(cv.sigma == al0());
  CHECK(cv.rho == fin(0));
  CHECK(cv.epsilon == al0());
  CHECK(cv.epsilon_prime == al0());
  CHECK(cv.lambda_prime == al0());  // qualifying set empty -> mu
  CHECK(cv.chi == fin(1));

  cv = characteristic_values(const_profile(al0()));
  CHECK(cv.mu == al0());
  CHECK(cv.sigma == fin(1));
  CHECK(cv.rho == fin(0));
  CHECK(cv.chi == fin(1));

  CHECK_THROWS_AS(characteristic_values(KernelProfile{al0(), al0(), {}}),
                  std::invalid_argument);
}

TEST_CASE("chi can flip strictly inside a finite segment") {
  // s(>=2)=8, s(>=3)=6, s(>=4)=4 <= epsilon=5: chi = 4, not a boundary
  KernelProfile p = profile(al0(), al0(),
                            {{fin(1), fin(1), al0()}, {fin(2), fin(5), fin(2)}});
  REQUIRE(is_valid(p));
  CHECK(characteristic_values(p).chi == fin(4));
}

TEST_CASE("accumulated sequence on the worked examples") {
  StepFn acc = accumulated(profile(
      al0(), al0(), {{fin(1), fin(1), al0()}, {fin(2), fin(2), fin(5)}}));
  CHECK(acc.value_at(fin(1)) == al0());
  CHECK(acc.value_at(fin(2)) == fin(5));
  CHECK(acc.value_at(fin(3)) == fin(0));
  CHECK(acc.value_at(al0()) == fin(0));

  acc = accumulated(perm_profile());
  CHECK(acc.value_at(fin(1)) == al0());
  CHECK(acc.value_at(fin(2)) == fin(0));

  acc = accumulated(i_profile(2));
  CHECK(acc.value_at(fin(1)) == al0());
  CHECK(acc.value_at(al0()) == al0());
}

TEST_CASE("accumulated handles aleph runs at finite index distance") {
  // kappa = aleph_{w+2}; classes of size 2 at every infinite size <= kappa
  Cardinal kap = aleph("w+2");
  KernelProfile p = profile(
      kap, fin(0),
      {{fin(1), fin(1), kap}, {aleph("0"), aleph("w+2"), fin(2)}});
  REQUIRE(is_valid(p));
  StepFn acc = accumulated(p);
  CHECK(acc.value_at(aleph("w+2")) == fin(2));
  CHECK(acc.value_at(aleph("w+1")) == fin(4));
  CHECK(acc.value_at(aleph("w")) == fin(6));
  CHECK(acc.value_at(aleph("5")) == al0());  // countably many sizes remain
  CHECK(acc.value_at(fin(2)) == al0());      // gap below the segment
  CHECK(acc.value_at(fin(1)) == kap);
}

TEST_CASE("accumulated agrees with direct summation everywhere") {
  auto probes = [](const KernelProfile& p) {
    std::vector<Cardinal> xs = {fin(1), fin(2), fin(3), al0()};
    for (const Segment& s : p.segments) {
      xs.push_back(s.lo);
      xs.push_back(s.hi);
      xs.push_back(card_succ(s.hi));
    }
    for (auto& x : xs)
      if (p.kappa < x) x = p.kappa;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
  };
  for (const KernelProfile& p : random_valid_profiles(200, 20260809)) {
    StepFn acc = accumulated(p);
    Cardinal prev = acc.value_at(fin(1));
    for (const Cardinal& x : probes(p)) {  // ascending
      Cardinal v = acc.value_at(x);
      CHECK(v == sum_range(p, x, p.kappa));
      CHECK(!(prev < v));
      prev = v;
    }
    // range law restated through the accumulated value at 1
    CHECK(card_add(acc.value_at(fin(1)), p.nu) == p.kappa);
  }
}

TEST_CASE("eval agrees with singleton range sums") {
  for (const KernelProfile& p : random_valid_profiles(100, 7)) {
    for (const Segment& s : p.segments) {
      CHECK(eval(p, s.lo) == sum_range(p, s.lo, s.lo));
      CHECK(eval(p, s.hi) == sum_range(p, s.hi, s.hi));
    }
    CHECK(eval(p, fin(1)) == sum_range(p, fin(1), fin(1)));
  }
}

TEST_CASE("strong and weak support partition the support") {
  for (const KernelProfile& p : random_valid_profiles(100, 99)) {
    SupportSplit s = support_split(p);
    Cardinal covered = fin(0);
    for (const Segment& seg : s.strong)
      covered = card_add(covered, count_cardinals_in(seg.lo, seg.hi));
    for (const Segment& seg : s.weak)
      covered = card_add(covered, count_cardinals_in(seg.lo, seg.hi));
    Cardinal support = fin(0);
    for (const Segment& seg : p.segments)
      support = card_add(support, count_cardinals_in(seg.lo, seg.hi));
    CHECK(covered == support);
    for (const Segment& seg : s.strong)
      CHECK(card_mul(seg.value, seg.lo) > p.nu);
    for (const Segment& seg : s.weak)
      CHECK(!(card_mul(seg.value, seg.hi) > p.nu));
  }
}

TEST_CASE("canonicalization merges split presentations") {
  KernelProfile split{al0(), al0(),
                      {{fin(4), fin(5), fin(1)},
                       {fin(1), fin(1), al0()},
                       {fin(2), fin(3), fin(1)}}};
  KernelProfile merged = canonicalize(split);
  REQUIRE(merged.segments.size() == 2);
  CHECK(merged.segments[1] == Segment{fin(2), fin(5), fin(1)});

  // aleph-adjacent intervals merge as cardinal intervals
  KernelProfile alephs{aleph("2"), aleph("2"),
                       {{aleph("0"), aleph("0"), aleph("2")},
                        {aleph("1"), aleph("1"), aleph("2")}}};
  CHECK(canonicalize(alephs).segments.size() == 1);

  // fin:8 and aleph(0) are not adjacent cardinals
  KernelProfile gap{al0(), al0(),
                    {{fin(8), fin(8), fin(1)}, {al0(), al0(), fin(1)}}};
  CHECK(canonicalize(gap).segments.size() == 2);
}

TEST_CASE("accumulated sequences of re-presentations compare equal") {
  KernelProfile merged = profile(al0(), al0(), {{fin(1), fin(4), al0()}});
  KernelProfile split{al0(), al0(),
                      {{fin(1), fin(2), al0()}, {fin(3), fin(4), al0()}}};
  StepFn a = accumulated(merged);
  StepFn b = accumulated(canonicalize(split));
  CHECK(a.equal_below(b, al0()));
  CHECK(a.equal_below(a, fin(3)));

  KernelProfile other = profile(al0(), al0(), {{fin(1), fin(5), al0()}});
  CHECK_FALSE(a.equal_below(accumulated(other), al0()));
  // below the first difference they agree
  CHECK(a.equal_below(accumulated(other), fin(2)));
}
