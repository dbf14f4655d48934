#pragma once

// Minimal property harness: run a predicate over generated cases and report
// the first counterexample with its case index and seed.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "ttstat/rational.hpp"

namespace ttstat::prop {

inline constexpr int kDefaultCases = 1000;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::uint64_t u64() { return rng_(); }
  bool boolean() { return integer(0, 1) == 1; }

  // Rational in [0,1] with denominator up to max_den; endpoints come up often.
  Rational probability(int max_den = 64) {
    const int pick = integer(0, 9);
    if (pick == 0) return 0;
    if (pick == 1) return 1;
    const int den = integer(1, max_den);
    Rational r(integer(0, den), den);
    r.canonicalize();
    return r;
  }

  Rational open_probability(int max_den = 64) {
    const int den = integer(2, max_den);
    Rational r(integer(1, den - 1), den);
    r.canonicalize();
    return r;
  }

 private:
  std::mt19937_64 rng_;
};

struct Outcome {
  bool passed = true;
  int cases = 0;
  std::string message;
};

// `property(gen, note)` returns true on success and may append context to note.
template <class Property>
Outcome check(const std::string& name, Property property, int cases = kDefaultCases,
              std::uint64_t seed = 0x5eed) {
  Gen gen(seed);
  for (int i = 0; i < cases; ++i) {
    std::ostringstream note;
    if (!property(gen, note)) {
      std::ostringstream msg;
      msg << name << ": counterexample at case " << i << " (seed " << seed << "): " << note.str();
      return {false, i, msg.str()};
    }
  }
  return {true, cases, std::to_string(cases) + " cases passed"};
}

}  // namespace ttstat::prop
