#include <catch2/catch_amalgamated.hpp>

#include "minclone/cardinal.hpp"

using namespace minclone;

namespace {

Cardinal C(const char* s) { return Cardinal::parse(s); }
Cardinal fin(std::uint64_t n) { return Cardinal::finite(n); }
Cardinal aleph(const char* idx) { return Cardinal::aleph(Ordinal::parse(idx)); }

// Cardinals with aleph indices below w^2, plus a finite range: the generator
// set for the exhaustive arithmetic properties.
std::vector<Cardinal> generator_set() {
  std::vector<Cardinal> v;
  for (std::uint64_t n : {0, 1, 2, 3, 5, 8, 13}) v.push_back(fin(n));
  for (const char* idx : {"0", "1", "2", "4", "w", "w+1", "w+3", "w*2",
                          "w*2+1", "w*3", "w*3+4"})
    v.push_back(aleph(idx));
  return v;
}

// Successor-chain oracle for interval counting: walk lo, succ(lo), ... and
// count members; a walk that does not leave the interval within the budget
// witnesses a countably infinite interval (finite distances on this fragment
// are exactly the successor-reachable ones).
Cardinal brute_count(Cardinal lo, const Cardinal& hi, bool lo_strict,
                     bool hi_strict) {
  if (lo_strict) lo = card_succ(lo);
  std::uint64_t count = 0;
  Cardinal cur = lo;
  for (int steps = 0; steps < 300; ++steps) {
    if (cur > hi || (cur == hi && hi_strict)) return fin(count);
    ++count;
    cur = card_succ(cur);
  }
  return Cardinal::aleph0();
}

}  // namespace

TEST_CASE("cardinal total order") {
  CHECK(fin(1000000) < Cardinal::aleph0());
  CHECK(aleph("0") < aleph("1"));
  CHECK(aleph("w") < aleph("w+1"));
  CHECK(fin(3) < fin(4));
  CHECK(Cardinal::aleph0() == aleph("0"));
}

TEST_CASE("cardinal addition and multiplication") {
  CHECK(card_add(fin(3), fin(4)) == fin(7));
  CHECK(card_add(Cardinal::aleph0(), fin(5)) == Cardinal::aleph0());
  CHECK(card_add(aleph("1"), aleph("0")) == aleph("1"));
  CHECK(card_mul(fin(2), fin(3)) == fin(6));
  CHECK(card_mul(Cardinal::aleph0(), Cardinal::aleph0()) == Cardinal::aleph0());
  CHECK(card_mul(fin(0), aleph("2")) == fin(0));

  auto xs = generator_set();
  for (const auto& a : xs)
    for (const auto& b : xs) {
      CHECK(card_add(a, b) == card_add(b, a));
      CHECK(card_mul(a, b) == card_mul(b, a));
    }
  for (const auto& a : xs)
    for (const auto& b : xs)
      for (const auto& c : xs) {
        CHECK(card_add(card_add(a, b), c) == card_add(a, card_add(b, c)));
        CHECK(card_mul(card_mul(a, b), c) == card_mul(a, card_mul(b, c)));
      }
}

TEST_CASE("cardinal successor") {
  CHECK(card_succ(fin(4)) == fin(5));
  CHECK(card_succ(Cardinal::aleph0()) == aleph("1"));
  CHECK(card_succ(aleph("w")) == aleph("w+1"));
}

TEST_CASE("cofinality and regularity") {
  CHECK(cofinality(Cardinal::aleph0()) == Cardinal::aleph0());
  CHECK(cofinality(aleph("w+1")) == aleph("w+1"));
  CHECK(cofinality(aleph("w")) == Cardinal::aleph0());
  CHECK_THROWS_AS(cofinality(fin(7)), std::domain_error);
  CHECK(is_regular(Cardinal::aleph0()));
  CHECK_FALSE(is_regular(aleph("w")));
  CHECK_FALSE(is_regular(aleph("w*2")));
  CHECK(is_regular(aleph("w*2+1")));
  CHECK_THROWS_AS(is_regular(fin(2)), std::domain_error);

  for (const auto& a : generator_set()) {
    if (a.is_finite()) continue;
    Cardinal cf = cofinality(a);
    CHECK(cofinality(cf) == cf);
    CHECK(!(a < cf));
  }
}

TEST_CASE("interval counting matches the spelled-out cases") {
  CHECK(count_cardinals_in(fin(3), fin(7)) == fin(5));
  CHECK(count_cardinals_in(fin(1), Cardinal::aleph0()) == Cardinal::aleph0());
  CHECK(count_cardinals_in(aleph("1"), aleph("w")) == Cardinal::aleph0());
  CHECK(count_cardinals_in(aleph("w"), aleph("w+3")) == fin(4));
  CHECK(count_cardinals_in(fin(5), fin(5)) == fin(1));
  CHECK(count_cardinals_in(fin(7), fin(3)) == fin(0));
  CHECK(count_cardinals_in(fin(3), fin(7), true, true) == fin(3));
  CHECK(count_cardinals_in(aleph("0"), aleph("0"), true, false) == fin(0));
  CHECK(count_cardinals_in(fin(2), aleph("0"), false, true) ==
        Cardinal::aleph0());
  CHECK(count_cardinals_in(aleph("w"), aleph("w"), false, true) == fin(0));
  CHECK(count_cardinals_in(aleph("1"), aleph("w"), false, true) ==
        Cardinal::aleph0());
}

TEST_CASE("interval counting agrees with successor-chain enumeration") {
  auto xs = generator_set();
  for (const auto& lo : xs)
    for (const auto& hi : xs)
      for (bool ls : {false, true})
        for (bool hs : {false, true})
          CHECK(count_cardinals_in(lo, hi, ls, hs) ==
                brute_count(lo, hi, ls, hs));
}

TEST_CASE("interval sums") {
  CHECK(sum_of_cardinals_in(fin(2), fin(4)) == fin(9));
  CHECK(sum_of_cardinals_in(fin(1), Cardinal::aleph0()) == Cardinal::aleph0());
  CHECK(sum_of_cardinals_in(Cardinal::aleph0(), aleph("w")) == aleph("w"));
  for (const auto& lo : generator_set())
    for (const auto& hi : generator_set()) {
      if (lo > hi || hi.is_finite()) continue;
      CHECK(sum_of_cardinals_in(lo, hi) ==
            card_max(hi, count_cardinals_in(lo, hi)));
    }
}

TEST_CASE("cardinal text round-trips") {
  for (const char* s : {"fin:0", "fin:7", "aleph(0)", "aleph(w)",
                        "aleph(w+1)", "aleph(w^w)", "aleph(w^(w+1)*3+2)"}) {
    Cardinal c = C(s);
    CHECK(Cardinal::parse(c.to_string()) == c);
    CHECK(c.to_string() == s);
  }
  CHECK_THROWS_AS(C("aleph(w"), std::invalid_argument);
  CHECK_THROWS_AS(C("fin:-1"), std::invalid_argument);
  CHECK_THROWS_AS(C("omega"), std::invalid_argument);
}
