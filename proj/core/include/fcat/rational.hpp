#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fcat {

// Exact rational scalar. GMP keeps values canonical (lowest terms,
// positive denominator), which the rest of the library relies on for
// structural equality of echelon forms.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p/q" or a plain integer "p". Throws std::invalid_argument on
// malformed input or zero denominator.
Rat rat_from_string(const std::string& s);

// Canonical form "p/q", denominator always present ("3" prints as "3/1").
std::string rat_to_string(const Rat& r);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated precondition of a library operation (caller bug).
struct ContractError : Error {
  using Error::Error;
};

// A generator list failed the per-object torsion-pair checks.
struct TorsionError : Error {
  using Error::Error;
};

// A "cannot happen" branch was reached; indicates a library defect.
struct InternalError : Error {
  using Error::Error;
};

// Deterministic pseudo-random stream (splitmix64). Used instead of
// <random> engines so that seeded runs are reproducible across platforms.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi] inclusive.
  long range(long lo, long hi) {
    if (hi < lo) throw ContractError("Rng::range: empty interval");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  Rng fork() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }
};

}  // namespace fcat
