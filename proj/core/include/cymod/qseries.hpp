#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cymod/arith.hpp"

namespace cymod {

inline constexpr i64 kGrid = 24;

// Truncated series on the q^(1/24) grid. Coefficient i sits at grid exponent
// offset + i*step; everything below `prec` (exclusive, grid units) is exact.
class TruncatedSeries {
public:
  TruncatedSeries() = default;
  TruncatedSeries(i64 offset, i64 step, std::vector<i64> coeffs, i64 prec);

  static TruncatedSeries one(i64 prec);
  // Integral-exponent series sum c[n] q^n, exact for n < nprec.
  static TruncatedSeries from_q(const std::vector<i64>& c, i64 nprec);

  i64 offset() const { return offset_; }
  i64 step() const { return step_; }
  i64 prec() const { return prec_; }
  const std::vector<i64>& raw() const { return c_; }

  // Coefficient at grid exponent e (0 off the lattice); throws beyond prec.
  i64 at_grid(i64 e) const;
  // Coefficient of q^n.
  i64 coefficient(i64 n) const { return at_grid(kGrid * n); }
  // Largest n with q^n known.
  i64 integral_prec() const;
  bool integral() const;
  std::vector<i64> q_coefficients(i64 nmax) const;  // a_0..a_nmax

  TruncatedSeries truncated(i64 prec) const;
  bool operator==(const TruncatedSeries& o) const;

  std::string to_sparse_text() const;
  std::string to_json() const;

private:
  void trim();
  i64 offset_ = 0;
  i64 step_ = kGrid;
  std::vector<i64> c_;
  i64 prec_ = 0;
};

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries invert(const TruncatedSeries& a);
TruncatedSeries pow(const TruncatedSeries& a, i64 r);

// Agreement on the common exact window.
bool equal_on_common_range(const TruncatedSeries& a, const TruncatedSeries& b);

struct RescaleResult {
  TruncatedSeries series;
  bool truncated = false;
};
// q^(1/24) -> q^(m/24). `cap` (grid units, 0 = none) bounds the result window.
RescaleResult rescale_capped(const TruncatedSeries& s, i64 m, i64 cap);
TruncatedSeries rescale(const TruncatedSeries& s, i64 m);
// a_n -> (-1)^n a_n on an integral series.
TruncatedSeries sign_twist(const TruncatedSeries& s);

// prod_{n>=1} (1 - x^n) up to x^K, via the pentagonal number theorem.
std::vector<i64> euler_product(i64 K);
// f^r for f with f[0] = 1, any integer r.
std::vector<i64> power_series_pow(const std::vector<i64>& f, i64 r, std::size_t len);

struct EtaQuotient {
  std::vector<std::pair<i64, i64>> factors;  // (scale m, exponent r)
  i64 offset() const;                        // sum m*r, grid units
  i64 weight_times_two() const;              // sum r
};

TruncatedSeries eta_power_expansion(i64 m, i64 r, i64 prec);
TruncatedSeries expand(const EtaQuotient& q, i64 prec);

// Named forms h1..h9; h6 and h9 are derived from h4.
bool has_eta_formula(const std::string& name);
EtaQuotient eta_form(const std::string& name);
TruncatedSeries form_series(const std::string& name, i64 nmax);

}  // namespace cymod
