#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cymod/arith.hpp"

namespace cymod {

// Overflow-checked 128-bit arithmetic (throws Errc::overflow).
i128 add_checked(i128 a, i128 b);
i128 mul_checked(i128 a, i128 b);
i128 gcd128(i128 a, i128 b);

class Rational {
public:
  Rational(i128 n = 0) : n_(n), d_(1) {}
  Rational(i128 n, i128 d);
  i128 num() const { return n_; }
  i128 den() const { return d_; }
  bool is_zero() const { return n_ == 0; }
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-n_, d_); }
  bool operator==(const Rational& o) const = default;
  std::string str() const;
  Rational from_int(i128 x) const { return Rational(x); }

private:
  i128 n_, d_;
};

class Fp {
public:
  Fp() = default;
  Fp(i128 v, i64 p);
  i64 value() const { return v_; }
  i64 modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  Fp operator+(const Fp& o) const { return Fp(static_cast<i128>(v_) + o.v_, p_); }
  Fp operator-(const Fp& o) const { return Fp(static_cast<i128>(v_) - o.v_, p_); }
  Fp operator*(const Fp& o) const { return Fp(static_cast<i128>(v_) * o.v_, p_); }
  Fp operator/(const Fp& o) const;
  Fp operator-() const { return Fp(-static_cast<i128>(v_), p_); }
  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  std::string str() const { return std::to_string(v_); }
  Fp from_int(i128 x) const { return Fp(x, p_); }

private:
  i64 v_ = 0;
  i64 p_ = 0;
};

// Integer polynomial, coefficients low -> high, no trailing zeros.
struct PolyZ {
  std::vector<i128> c;

  PolyZ() = default;
  PolyZ(std::vector<i128> coeffs);
  static PolyZ constant(i128 x) { return PolyZ({x}); }
  static PolyZ var() { return PolyZ({0, 1}); }

  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  i128 lc() const { return c.empty() ? 0 : c.back(); }
  i128 content() const;
  PolyZ primitive() const;

  PolyZ operator+(const PolyZ& o) const;
  PolyZ operator-(const PolyZ& o) const;
  PolyZ operator*(const PolyZ& o) const;
  PolyZ operator-() const;
  PolyZ scaled(i128 k) const;
  PolyZ pow(int e) const;
  bool operator==(const PolyZ& o) const = default;

  Rational eval(const Rational& x) const;
  i64 eval_mod(i64 x, i64 p) const;
  std::string str(const std::string& var = "t") const;
};

// Exact division; throws when b does not divide a in Q[t] with integral result.
PolyZ exact_div(const PolyZ& a, const PolyZ& b);
// Primitive gcd with positive leading coefficient.
PolyZ gcd(const PolyZ& a, const PolyZ& b);

class RatFunc {
public:
  RatFunc(i128 x = 0) : num_(PolyZ::constant(x)), den_(PolyZ::constant(1)) { normalize(); }
  RatFunc(PolyZ num, PolyZ den);
  static RatFunc var() { return RatFunc(PolyZ::var(), PolyZ::constant(1)); }

  const PolyZ& num() const { return num_; }
  const PolyZ& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  RatFunc from_int(i128 x) const { return RatFunc(x); }

  // f(g(t)).
  RatFunc compose(const RatFunc& g) const;
  Rational eval(const Rational& x) const;  // throws Errc::pole
  std::string str(const std::string& var = "t") const;

private:
  void normalize();
  PolyZ num_, den_;
};

// Polynomials over F_p.
struct PolyFp {
  i64 p = 2;
  std::vector<i64> c;

  PolyFp() = default;
  PolyFp(i64 p_, std::vector<i64> coeffs);
  static PolyFp from_z(const PolyZ& f, i64 p);
  static PolyFp constant(i64 p, i64 x) { return PolyFp(p, {x}); }
  static PolyFp var(i64 p) { return PolyFp(p, {0, 1}); }
  static PolyFp linear(i64 p, i64 root) { return PolyFp(p, {mod(-root, p), 1}); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  i64 lc() const { return c.empty() ? 0 : c.back(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }

  PolyFp operator+(const PolyFp& o) const;
  PolyFp operator-(const PolyFp& o) const;
  PolyFp operator*(const PolyFp& o) const;
  PolyFp operator-() const { return scaled(p - 1); }
  PolyFp scaled(i64 k) const;
  PolyFp from_int(i128 x) const { return PolyFp(p, {static_cast<i64>(((x % p) + p) % p)}); }
  PolyFp monic() const;
  PolyFp derivative() const;
  i64 eval(i64 x) const;
  bool operator==(const PolyFp& o) const { return p == o.p && c == o.c; }
  bool operator<(const PolyFp& o) const { return c.size() != o.c.size() ? c.size() < o.c.size() : c < o.c; }
  std::string str(const std::string& var = "t") const;
};

std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b);
PolyFp operator%(const PolyFp& a, const PolyFp& b);
PolyFp operator/(const PolyFp& a, const PolyFp& b);
PolyFp gcd(PolyFp a, PolyFp b);  // monic
PolyFp powmod(PolyFp base, i64 e, const PolyFp& m);

// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
std::vector<std::pair<PolyFp, int>> factor(const PolyFp& f);
bool is_irreducible(const PolyFp& f);

// Norm from F_p[t]/(f) down to F_p of the class of g (f irreducible).
i64 residue_norm(const PolyFp& g, const PolyFp& f);

// Largest k with f^k | g (g nonzero), and g / f^k.
std::pair<int, PolyFp> valuation(PolyFp g, const PolyFp& f);

}  // namespace cymod
