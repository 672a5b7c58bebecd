#include "cymod/arith.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <utility>

#include "cymod/error.hpp"

namespace cymod {

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<i128>(a) * b % m); }

i64 powmod(i64 a, i64 e, i64 m) {
  i64 r = 1 % m;
  a = mod(a, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

i64 invmod(i64 a, i64 p) {
  i64 g = p, x = 0, x1 = 1, b = mod(a, p);
  if (b == 0) fail(Errc::division_by_zero, "inverse of 0 mod " + std::to_string(p));
  while (b != 0) {
    i64 q = g / b;
    std::tie(g, b) = std::make_pair(b, g - q * b);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) fail(Errc::division_by_zero, "non-invertible residue");
  return mod(x, p);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::vector<i64> primes_between(i64 lo, i64 hi) {
  std::vector<i64> out;
  for (i64 n = std::max<i64>(lo, 2); n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

std::string to_string(i128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

static void check_odd_prime(i64 p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    fail(Errc::invalid_prime, "expected an odd prime, got " + std::to_string(p));
}

int legendre_symbol(i64 a, i64 p) {
  check_odd_prime(p);
  a = mod(a, p);
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::optional<i64> sqrt_mod(i64 a, i64 p) {
  int l = legendre_symbol(a, p);
  a = mod(a, p);
  if (l == 0) return 0;
  if (l < 0) return std::nullopt;
  // Tonelli-Shanks
  i64 q = p - 1, s = 0;
  while (q % 2 == 0) q /= 2, ++s;
  i64 z = 2;
  while (legendre_symbol(z, p) != -1) ++z;
  i64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    i64 i = 0, tt = t;
    while (tt != 1) tt = mulmod(tt, tt, p), ++i;
    i64 b = c;
    for (i64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return std::min(r, p - r);
}

static bool squarefree(i64 n) {
  n = n < 0 ? -n : n;
  for (i64 q = 2; q * q <= n; ++q)
    if (n % (q * q) == 0) return false;
  return true;
}

bool is_fundamental_discriminant(i64 D) {
  if (D == 0) return false;
  if (mod(D, 4) == 1) return squarefree(D);
  if (mod(D, 4) == 0) {
    i64 m = D / 4;
    return (mod(m, 4) == 2 || mod(m, 4) == 3) && squarefree(m);
  }
  return false;
}

int kronecker_character(i64 D, i64 n) {
  if (!is_fundamental_discriminant(D))
    fail(Errc::invalid_discriminant, std::to_string(D) + " is not a fundamental discriminant");
  if (n <= 0) fail(Errc::invalid_prime, "kronecker_character needs n > 0");
  int r = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    i64 d8 = mod(D, 8);
    if (d8 == 3 || d8 == 5) r = -r;
  }
  for (i64 q = 3; q * q <= n; q += 2) {
    while (n % q == 0) {
      n /= q;
      r *= legendre_symbol(D, q);
      if (r == 0) return 0;
    }
  }
  if (n > 1) r *= legendre_symbol(D, n);
  return r;
}

bool supported_field(int d) { return d == 1 || d == 2 || d == 3 || d == 7; }

i64 field_discriminant(int d) {
  switch (d) {
    case 1: return -4;
    case 2: return -8;
    case 3: return -3;
    case 7: return -7;
  }
  fail(Errc::unsupported_field, "d = " + std::to_string(d));
}

bool QuadFieldElement::valid() const {
  if (!supported_field(d)) return false;
  bool parity = (d == 1 || d == 2) ? (mod(u, 2) == 0 && mod(v, 2) == 0) : (mod(u - v, 2) == 0);
  return parity && (static_cast<i128>(u) * u + static_cast<i128>(d) * v * v) % 4 == 0;
}

i64 QuadFieldElement::norm() const {
  return static_cast<i64>((static_cast<i128>(u) * u + static_cast<i128>(d) * v * v) / 4);
}

QuadFieldElement QuadFieldElement::operator*(const QuadFieldElement& o) const {
  if (d != o.d) fail(Errc::unsupported_field, "mixed fields in product");
  return {d, (u * o.u - d * v * o.v) / 2, (u * o.v + v * o.u) / 2};
}

QuadFieldElement QuadFieldElement::unit_generator(int d) {
  if (d == 1) return {1, 0, 2};
  if (d == 3) return {3, 1, 1};
  if (!supported_field(d)) fail(Errc::unsupported_field, "d = " + std::to_string(d));
  return {d, -2, 0};
}

std::vector<QuadFieldElement> QuadFieldElement::unit_orbit() const {
  std::vector<QuadFieldElement> out{*this};
  auto g = unit_generator(d);
  for (auto x = *this * g; !(x == *this); x = x * g) out.push_back(x);
  return out;
}

std::vector<QuadFieldElement> norm_equation_solutions(int d, i64 p) {
  if (!supported_field(d)) fail(Errc::unsupported_field, "d = " + std::to_string(d));
  if (!is_prime(p)) fail(Errc::invalid_prime, std::to_string(p) + " is not prime");
  std::vector<QuadFieldElement> out;
  const i64 target = 4 * p;
  for (i64 v = 0; d * v * v <= target; ++v) {
    i64 rest = target - d * v * v;
    auto u = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(rest))));
    while (u * u > rest) --u;
    while ((u + 1) * (u + 1) <= rest) ++u;
    if (u * u != rest) continue;
    for (i64 sv : {v, -v}) {
      QuadFieldElement x{d, u, sv};
      if (x.valid()) out.push_back(x);
      if (v == 0) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.u != b.u ? a.u < b.u : a.v > b.v;
  });
  return out;
}

}  // namespace cymod
