#pragma once

// Brute-force counterpart of the term space: every closed term with
// canonically named binders, filtered by the type checker and the redex
// detector. Slow but obviously correct.

#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "proofsynth/term.hpp"
#include "proofsynth/typecheck.hpp"

namespace proofsynth::testing {

namespace detail {

using Named = std::pair<Term, long>;  // term and the next free binder index

inline std::string binder(long k) { return "x" + std::to_string(k); }

inline std::vector<Named> closed_terms(std::size_t n, std::vector<std::string>& env, long next) {
  std::vector<Named> out;
  if (n == 0) return out;
  if (n == 1) {
    for (const auto& x : env) out.emplace_back(Term::var(x), next);
    return out;
  }
  {
    env.push_back(binder(next));
    for (auto& [b, k] : closed_terms(n - 1, env, next + 1)) out.emplace_back(Term::lam(binder(next), b), k);
    env.pop_back();
  }
  for (auto& [b, k] : closed_terms(n - 1, env, next)) {
    out.emplace_back(Term::inj_l(b), k);
    out.emplace_back(Term::inj_r(b), k);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    for (auto& [l, k1] : closed_terms(i, env, next)) {
      for (auto& [r, k2] : closed_terms(n - 1 - i, env, k1)) {
        out.emplace_back(Term::app(l, r), k2);
        out.emplace_back(Term::pair(l, r), k2);
      }
    }
    // case s of (x, y) -> b: both binders are named at the node
    std::string x = binder(next), y = binder(next + 1);
    for (auto& [s, k1] : closed_terms(i, env, next + 2)) {
      env.push_back(x);
      env.push_back(y);
      for (auto& [b, k2] : closed_terms(n - 1 - i, env, k1)) out.emplace_back(Term::case_pair(s, x, y, b), k2);
      env.resize(env.size() - 2);
    }
  }
  for (std::size_t i = 1; i + 2 < n; ++i)
    for (std::size_t j = 1; i + j + 1 < n; ++j) {
      std::size_t m = n - 1 - i - j;
      std::string x = binder(next), y = binder(next + 1);
      for (auto& [s, k1] : closed_terms(i, env, next + 2)) {
        env.push_back(x);
        for (auto& [l, k2] : closed_terms(j, env, k1)) {
          env.back() = y;
          for (auto& [r, k3] : closed_terms(m, env, k2)) out.emplace_back(Term::case_sum(s, x, l, y, r), k3);
          env.back() = x;
        }
        env.pop_back();
      }
    }
  return out;
}

}  // namespace detail

// Closed, hole-free, typable terms of exactly n nodes, one per α-class.
inline std::vector<Term> oracle_terms(std::size_t n, bool normal_only) {
  std::vector<std::string> env;
  std::vector<Term> out;
  for (auto& [t, k] : detail::closed_terms(n, env, 0)) {
    (void)k;
    if (!infer_type(t)) continue;
    if (normal_only && find_beta_eta_redex(t)) continue;
    out.push_back(t);
  }
  return out;
}

// Upper tail of the chi-square distribution with `df` degrees of freedom.
inline double chi_square_p(double x, double df) {
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(df), x));
}

// Pearson statistic of observed counts against a uniform expectation.
inline double chi_square_uniform(const std::map<std::string, std::size_t>& observed, std::size_t classes,
                                 std::size_t draws) {
  const double e = static_cast<double>(draws) / static_cast<double>(classes);
  double stat = 0;
  std::size_t seen = 0;
  for (const auto& [k, o] : observed) {
    double d = static_cast<double>(o) - e;
    stat += d * d / e;
    ++seen;
  }
  stat += static_cast<double>(classes - seen) * e;  // classes never drawn
  return stat;
}

}  // namespace proofsynth::testing
