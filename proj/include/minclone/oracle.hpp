// Bound-soundness harness: composes random pairs of concrete functions
// exactly and checks the exact kernel profile of the composition against
// every applicable bound of the composition calculus.

#ifndef MINCLONE_ORACLE_HPP
#define MINCLONE_ORACLE_HPP

#include <cstdint>
#include <future>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "minclone/composition_bounds.hpp"
#include "minclone/countable_model.hpp"

namespace minclone {

// Query points worth probing for a pair: every presented size of either
// factor or of the composition, their successors, and the base cases.
inline std::vector<Cardinal> oracle_queries(const KernelProfile& f,
                                            const KernelProfile& g,
                                            const KernelProfile& h) {
  std::vector<Cardinal> q = {Cardinal::finite(1), Cardinal::finite(2),
                             Cardinal::finite(3), Cardinal::aleph0()};
  for (const KernelProfile* p : {&f, &g, &h})
    for (const Segment& s : p->segments) {
      q.push_back(s.lo);
      q.push_back(s.hi);
      if (s.hi.is_finite()) q.push_back(card_succ(s.hi));
    }
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  while (!q.empty() && f.kappa < q.back()) q.pop_back();
  return q;
}

// Exact profile of h = outer o inner versus the symbolic bounds.  Empty
// return means every applicable bound held.
inline std::string check_bounds_against_exact(const KernelProfile& outer,
                                              const KernelProfile& inner,
                                              const KernelProfile& h) {
  std::ostringstream bad;
  auto [nu_lo, nu_hi] = nu_bounds(outer, inner);
  if (h.nu < nu_lo || nu_hi < h.nu)
    bad << "nu " << h.nu.to_string() << " outside [" << nu_lo.to_string()
        << ", " << nu_hi.to_string() << "]; ";

  std::vector<Cardinal> queries = oracle_queries(outer, inner, h);
  BoundSet bs = envelope(outer, inner, queries);
  for (const QueryBounds& q : bs.queries) {
    Cardinal exact = eval(h, q.xi);
    if (q.upper < exact)
      bad << "s_h(" << q.xi.to_string() << ") = " << exact.to_string()
          << " exceeds upper " << q.upper.to_string() << " (" << q.upper_source
          << "); ";
    if (q.lower && exact < *q.lower)
      bad << "s_h(" << q.xi.to_string() << ") = " << exact.to_string()
          << " below lower " << q.lower->to_string() << " (" << q.lower_source
          << "); ";
  }
  for (const Cardinal& xi : queries) {
    if (!xi.is_infinite()) continue;
    Cardinal tail_exact = sum_range(h, xi, h.kappa, /*lo_strict=*/true);
    if (bound_tail(outer, inner, xi) < tail_exact)
      bad << "tail bound violated at " << xi.to_string() << "; ";
    Cardinal iv_exact = sum_range(h, xi, inner.nu, /*lo_strict=*/true);
    if (bound_interval(inner, outer, xi) < iv_exact)
      bad << "interval bound violated at " << xi.to_string() << "; ";
    if (is_regular(xi)) {
      Cardinal geq_exact = sum_range(h, xi, h.kappa);
      if (bound_geq(outer, inner, xi) < geq_exact)
        bad << "accumulated bound violated at " << xi.to_string() << "; ";
    }
  }
  for (const Cardinal& xi : {Cardinal::finite(1), Cardinal::finite(2)}) {
    Cardinal geq_exact = sum_range(h, xi, h.kappa);
    if (bound_geq(outer, inner, xi) < geq_exact)
      bad << "accumulated bound violated at " << xi.to_string() << "; ";
  }
  return bad.str();
}

struct OracleSummary {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> details;  // first few failure descriptions
};

// One seeded case: draw a pair, compose, certify, check bounds, and check
// extensionality on a slice of points below the horizon.
inline std::string oracle_case(std::uint64_t seed, std::uint64_t horizon) {
  std::mt19937_64 rng(seed);
  ConcreteFunction g = random_concrete_function(rng);
  ConcreteFunction f = random_concrete_function(rng);
  ConcreteFunction h = ConcreteFunction::compose(f, g);
  std::uint64_t step = std::max<std::uint64_t>(1, horizon / 128);
  for (std::uint64_t n = seed % step; n < horizon; n += step)
    if (h.apply(n) != f.apply(g.apply(n)))
      return "extensional mismatch at n=" + std::to_string(n);
  return check_bounds_against_exact(kernel_profile(f), kernel_profile(g),
                                    kernel_profile(h));
}

inline OracleSummary run_oracle(std::uint64_t seed, std::uint64_t cases,
                                std::uint64_t horizon, unsigned workers = 0) {
  if (workers == 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  OracleSummary total;
  total.cases = cases;
  std::vector<std::future<OracleSummary>> futs;
  std::uint64_t chunk = (cases + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t begin = w * chunk;
    std::uint64_t end = std::min(cases, begin + chunk);
    if (begin >= end) break;
    futs.push_back(std::async(std::launch::async, [=]() {
      OracleSummary part;
      for (std::uint64_t i = begin; i < end; ++i) {
        std::string bad = oracle_case(seed + i, horizon);
        if (!bad.empty()) {
          ++part.failures;
          if (part.details.size() < 5)
            part.details.push_back("case seed " + std::to_string(seed + i) +
                                   ": " + bad);
        }
      }
      return part;
    }));
  }
  for (auto& f : futs) {
    OracleSummary part = f.get();
    total.failures += part.failures;
    for (const auto& d : part.details)
      if (total.details.size() < 5) total.details.push_back(d);
  }
  return total;
}

}  // namespace minclone

#endif  // MINCLONE_ORACLE_HPP
