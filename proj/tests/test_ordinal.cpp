#include <catch2/catch_amalgamated.hpp>

#include "minclone/ordinal.hpp"

using minclone::Ordinal;

namespace {

Ordinal O(const char* s) { return Ordinal::parse(s); }

// Small but structurally varied sample set for algebraic properties.
std::vector<Ordinal> sample_ordinals() {
  std::vector<Ordinal> v;
  for (const char* s :
       {"0", "1", "2", "7", "w", "w+1", "w+5", "w*2", "w*2+3", "w*9",
        "w^2", "w^2+w*4+1", "w^3*2", "w^w", "w^w+w^2", "w^w*3+w+2",
        "w^(w+1)", "w^(w*2)+w^w", "w^(w^w)", "w^(w^w)+w^(w+3)*2+5"})
    v.push_back(O(s));
  return v;
}

}  // namespace

TEST_CASE("ordinal comparison follows the CNF order") {
  CHECK(O("w") == O("w"));
  CHECK(O("w+1") < O("w*2"));
  CHECK(O("w^w") > O("w*5"));
  CHECK(O("0") < O("1"));
  CHECK(O("w^2") < O("w^3"));
  CHECK(O("w^(w+1)") > O("w^w*9+w^2"));
  CHECK(O("w*2+3") < O("w*3"));
}

TEST_CASE("ordinal addition absorbs small left parts") {
  CHECK(Ordinal::sum(O("1"), O("w")) == O("w"));
  CHECK(Ordinal::sum(O("w"), O("1")) == O("w+1"));
  CHECK(Ordinal::sum(O("w*2+3"), O("w")) == O("w*3"));
  CHECK(Ordinal::sum(O("w^2+w"), O("w^2")) == O("w^2*2"));
  CHECK(Ordinal::sum(O("w^w+w*4"), O("5")) == O("w^w+w*4+5"));
}

TEST_CASE("ordinal addition is associative with identity 0") {
  auto xs = sample_ordinals();
  for (const auto& a : xs) {
    CHECK(Ordinal::sum(a, Ordinal()) == a);
    CHECK(Ordinal::sum(Ordinal(), a) == a);
  }
  for (const auto& a : xs)
    for (const auto& b : xs)
      for (const auto& c : xs)
        CHECK(Ordinal::sum(Ordinal::sum(a, b), c) ==
              Ordinal::sum(a, Ordinal::sum(b, c)));
}

TEST_CASE("left difference inverts addition") {
  auto xs = sample_ordinals();
  for (const auto& a : xs)
    for (const auto& b : xs) {
      if (Ordinal::compare(a, b) == std::strong_ordering::greater) {
        CHECK_THROWS_AS(Ordinal::left_difference(a, b), std::invalid_argument);
        continue;
      }
      Ordinal d = Ordinal::left_difference(a, b);
      CHECK(Ordinal::sum(a, d) == b);
    }
}

TEST_CASE("successor and limit structure") {
  CHECK(O("0").is_finite());
  CHECK(O("w+1").is_successor());
  CHECK(O("w").is_limit());
  CHECK(O("w^2+w*3").is_limit());
  CHECK(O("w*2+3").limit_part() == O("w*2"));
  CHECK(O("w*2+3").finite_tail() == 3);
  CHECK(O("w^w").limit_part() == O("w^w"));
  CHECK(O("w^w").finite_tail() == 0);
}

TEST_CASE("ordinal text round-trips") {
  for (const auto& a : sample_ordinals())
    CHECK(Ordinal::parse(a.to_string()) == a);
  CHECK(O("w^1*1") == O("w"));
  CHECK(O(" w^( w + 1 ) * 3 ") == O("w^(w+1)*3"));
  CHECK(O("w^0*5") == O("5"));
  CHECK_THROWS_AS(O("w^"), std::invalid_argument);
  CHECK_THROWS_AS(O("w*0"), std::invalid_argument);
  CHECK_THROWS_AS(O("1+w junk"), std::invalid_argument);
  CHECK_THROWS_AS(O("w+w"), std::invalid_argument);  // not in CNF
}
