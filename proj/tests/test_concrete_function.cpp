#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "minclone/concrete_function.hpp"
#include "minclone/countable_model.hpp"

using namespace minclone;

namespace {

Cardinal fin(std::uint64_t n) { return Cardinal::finite(n); }
Cardinal al0() { return Cardinal::aleph0(); }

ConcreteFunction doubling() {  // n -> 2n
  return ConcreteFunction::make({}, 1, {ResidueRule::affine(0, 2)});
}
ConcreteFunction halving() {  // n -> n div 2
  return ConcreteFunction::make(
      {}, 2, {ResidueRule::affine(0, 1), ResidueRule::affine(0, 1)});
}
ConcreteFunction zero_fn() {
  return ConcreteFunction::make({}, 1, {ResidueRule::constant(0)});
}

}  // namespace

TEST_CASE("apply follows prefix and rules") {
  CHECK(doubling().apply(7) == 14);
  CHECK(zero_fn().apply(123456) == 0);
  ConcreteFunction with_prefix =
      ConcreteFunction::make({9, 9, 9}, 1, {ResidueRule::affine(0, 2)});
  CHECK(with_prefix.apply(1) == 9);   // prefix wins
  CHECK(with_prefix.apply(5) == 10);  // anchored rule, not re-based
  CHECK(ConcreteFunction::identity().apply(42) == 42);
}

TEST_CASE("make rejects bad rules") {
  CHECK_THROWS_AS(ConcreteFunction::make({}, 2, {ResidueRule::affine(0, 1)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      ConcreteFunction::make({}, 1, {ResidueRule::affine(-5, 1)}),
      std::invalid_argument);
  // negative anchor is fine when the prefix covers the negative stretch
  ConcreteFunction ok =
      ConcreteFunction::make({0, 0, 0, 0, 0, 0}, 1, {ResidueRule::affine(-6, 1)});
  CHECK(ok.apply(6) == 0);
  CHECK(ok.apply(10) == 4);
}

TEST_CASE("kernel profiles of the basic shapes") {
  KernelProfile p = kernel_profile(doubling());
  CHECK(p == canonicalize(KernelProfile{al0(), al0(), {{fin(1), fin(1), al0()}}}));

  p = kernel_profile(zero_fn());
  CHECK(p == canonicalize(KernelProfile{al0(), al0(), {{al0(), al0(), fin(1)}}}));

  p = kernel_profile(halving());
  CHECK(p == canonicalize(KernelProfile{al0(), fin(0), {{fin(2), fin(2), al0()}}}));

  p = kernel_profile(ConcreteFunction::identity());
  CHECK(p == canonicalize(KernelProfile{al0(), fin(0), {{fin(1), fin(1), al0()}}}));
}

TEST_CASE("composition is extensional") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 40; ++i) {
    ConcreteFunction g = random_concrete_function(rng);
    ConcreteFunction f = random_concrete_function(rng);
    ConcreteFunction h = ConcreteFunction::compose(f, g);
    for (std::uint64_t n = 0; n < 10000; ++n)
      REQUIRE(h.apply(n) == f.apply(g.apply(n)));
  }
}

TEST_CASE("composition normalizes to rule-level identities") {
  ConcreteFunction f = halving();
  CHECK(ConcreteFunction::compose(f, ConcreteFunction::identity()) == f);
  CHECK(ConcreteFunction::compose(ConcreteFunction::identity(), f) == f);
  CHECK(ConcreteFunction::compose(zero_fn(), f) == zero_fn());

  // identity presented on two residue classes reduces to one
  ConcreteFunction split_id = ConcreteFunction::make(
      {}, 2, {ResidueRule::affine(0, 2), ResidueRule::affine(1, 2)});
  CHECK(split_id.normalized() == ConcreteFunction::identity());
}

TEST_CASE("halving composed with itself collapses pairs of pairs") {
  ConcreteFunction h2 = ConcreteFunction::compose(halving(), halving());
  for (std::uint64_t n = 0; n < 100; ++n) REQUIRE(h2.apply(n) == n / 4);
  KernelProfile p = kernel_profile(h2);
  CHECK(p == canonicalize(KernelProfile{al0(), fin(0), {{fin(4), fin(4), al0()}}}));
}

TEST_CASE("certified profiles match brute-force class counting") {
  std::mt19937_64 rng(20260809);
  const std::uint64_t probe_targets = 1000;
  const std::uint64_t domain_bound = 20000;
  for (int i = 0; i < 40; ++i) {
    ConcreteFunction f = random_concrete_function(rng);
    TargetAnalysis ta = analyze_targets(f);
    std::vector<std::uint64_t> count(probe_targets, 0);
    for (std::uint64_t n = 0; n < domain_bound; ++n) {
      std::uint64_t v = f.apply(n);
      if (v < probe_targets) ++count[v];
    }
    for (std::uint64_t y = 0; y < probe_targets; ++y) {
      if (ta.infinite_class(y)) {
        REQUIRE(count[y] > 1000);  // infinite classes show unbounded growth
      } else {
        REQUIRE(count[y] == ta.size_of(y));
      }
    }
  }
}

TEST_CASE("finite class members enumerate the preimage") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    ConcreteFunction f = random_concrete_function(rng);
    TargetAnalysis ta = analyze_targets(f);
    for (std::uint64_t y = 0; y < 40; ++y) {
      if (ta.infinite_class(y)) continue;
      auto members = finite_class_members(f, y);
      REQUIRE(members.size() == ta.size_of(y));
      for (std::uint64_t n : members) REQUIRE(f.apply(n) == y);
    }
  }
}

TEST_CASE("infinite class member enumeration is increasing and exact") {
  ConcreteFunction f = ConcreteFunction::make(
      {5, 5}, 3,
      {ResidueRule::constant(5), ResidueRule::affine(0, 2),
       ResidueRule::constant(5)});
  std::uint64_t prev = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    std::uint64_t n = infinite_class_member(f, 5, i);
    REQUIRE(f.apply(n) == 5);
    if (i > 0) REQUIRE(n > prev);
    prev = n;
  }
  CHECK(infinite_class_member(f, 5, 0) == 0);
  CHECK(infinite_class_member(f, 5, 1) == 1);
}

TEST_CASE("normalization is idempotent and extensionally sound") {
  std::mt19937_64 rng(314);
  for (int i = 0; i < 50; ++i) {
    ConcreteFunction f = random_concrete_function(rng);
    ConcreteFunction n1 = f.normalized();
    for (std::uint64_t n = 0; n < 2000; ++n)
      REQUIRE(n1.apply(n) == f.apply(n));
    REQUIRE(n1.normalized() == n1);
  }
}
