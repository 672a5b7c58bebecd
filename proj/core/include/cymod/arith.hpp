#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cymod {

using i64 = std::int64_t;
using i128 = __int128;

i64 mod(i64 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 a, i64 e, i64 m);
i64 invmod(i64 a, i64 p);
bool is_prime(i64 n);
std::vector<i64> primes_between(i64 lo, i64 hi);
std::string to_string(i128 x);

// a^((p-1)/2) mod p, mapped to {-1,0,1}. `a` is reduced first.
int legendre_symbol(i64 a, i64 p);

// Smaller root of x^2 = a (mod p), or nullopt for a non-residue.
std::optional<i64> sqrt_mod(i64 a, i64 p);

// D = 1 is accepted and means the trivial character.
bool is_fundamental_discriminant(i64 D);
int kronecker_character(i64 D, i64 n);

// (u + v*sqrt(-d))/2 in the maximal order of Q(sqrt(-d)), d in {1,2,3,7}.
struct QuadFieldElement {
  int d = 1;
  i64 u = 0;
  i64 v = 0;

  bool valid() const;
  i64 norm() const;  // (u^2 + d v^2)/4
  QuadFieldElement operator*(const QuadFieldElement& o) const;
  QuadFieldElement operator-() const { return {d, -u, -v}; }
  QuadFieldElement conj() const { return {d, u, -v}; }
  bool operator==(const QuadFieldElement& o) const = default;

  static QuadFieldElement one(int d) { return {d, 2, 0}; }
  // i for d=1, the sixth root of unity (1+sqrt(-3))/2 for d=3, -1 otherwise.
  static QuadFieldElement unit_generator(int d);
  std::vector<QuadFieldElement> unit_orbit() const;
};

bool supported_field(int d);
// Discriminant of Q(sqrt(-d)): -4, -8, -3, -7.
i64 field_discriminant(int d);

// All (u,v) with u^2 + d v^2 = 4p, u >= 0, sorted by u ascending then v descending.
std::vector<QuadFieldElement> norm_equation_solutions(int d, i64 p);

}  // namespace cymod
