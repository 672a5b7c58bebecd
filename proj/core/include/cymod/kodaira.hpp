#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cymod/families.hpp"

namespace cymod {

enum class FiberKind { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };

// A closed point of P^1 over F_p: a monic irreducible polynomial or infinity.
struct Place {
  bool infinity = false;
  PolyFp f;
  int degree() const { return infinity ? 1 : f.degree(); }
  std::optional<i64> rational_point() const;  // t0 for t - t0
  std::string label() const;
};

struct FiberReport {
  Place place;
  FiberKind kind = FiberKind::I;
  int n = 0;           // I_n / I_n*
  bool split = false;  // multiplicative only
  int tau = 0;
  int euler = 0;       // per geometric fiber
  std::string symbol() const;  // "I4", "I1*", "IV*", ...
};

// Local minimal data at one place (p >= 5).
struct LocalFiber {
  int v4 = 0, v6 = 0, vdisc = 0;  // after minimalization; INT_MAX for identically zero
  i64 r4 = 0, r6 = 0;             // residues of c4, c6 at a rational place (0 if v > 0)
  std::optional<FiberReport> fiber;
};

// c4, c6, disc of the integral model over F_p[t].
class FiberModel {
public:
  FiberModel(const WeierstrassFamily& family, i64 p);
  i64 p() const { return p_; }
  const PolyFp& c4() const { return c4_; }
  const PolyFp& c6() const { return c6_; }
  const PolyFp& disc() const { return disc_; }

  LocalFiber local(const Place& place) const;
  LocalFiber local_at(i64 t0) const;  // fast path for rational points
  std::vector<Place> candidate_places() const;

private:
  i64 p_;
  PolyFp c4_, c6_, disc_;
};

// Residue characteristic must be >= 5 and outside the family's level primes.
void require_good_prime(const WeierstrassFamily& f, i64 p);

FiberReport classify_fiber(const WeierstrassFamily& f, i64 p, const Place& place);

struct ScanResult {
  std::string family;
  i64 p = 0;
  std::vector<FiberReport> fibers;
  int euler_sum = 0;
  int euler_target = 0;
  bool audit_ok = false;
  // Geometric configuration: each place counted with its degree.
  std::vector<std::string> configuration() const;
};

ScanResult scan(const WeierstrassFamily& f, i64 p, bool throw_on_audit_failure = true);

struct ConfigVerdict {
  std::string family;
  std::vector<std::string> expected;
  std::vector<std::string> measured;
  std::vector<i64> primes;
  bool audits_ok = false;
  bool ok = false;
  std::vector<std::string> notes;
};

// Needs >= 3 distinct good primes; throws Errc::prime_leak if the configuration moves.
ConfigVerdict config_verdict(const WeierstrassFamily& f, const std::vector<i64>& primes);

int ns_trace(const WeierstrassFamily& f, i64 p);
int ns_trace(const ScanResult& s);

// (n_plus, n_minus) for a semistable configuration given by symbols or by n's.
std::pair<int, int> cycle_split_counts(const std::vector<std::string>& config);
std::pair<int, int> cycle_split_counts(const std::vector<int>& ns);

struct NSDecomposition {
  // (character discriminant, multiplicity); discriminant 1 is the trivial character.
  std::vector<std::pair<i64, int>> plus, minus;

  int n_prime_plus() const;
  int n_second_plus() const;
  int n_prime_minus() const;
  int n_second_minus() const;
  int rank() const;
  int predicted_trace(i64 p) const;  // sum over both parts of mult * chi_D(p)
  int plus_trace(i64 p) const;
  int minus_trace(i64 p) const;
};

std::optional<NSDecomposition> ns_decomposition(const std::string& family);

std::vector<std::string> sorted_config(std::vector<std::string> c);

}  // namespace cymod
