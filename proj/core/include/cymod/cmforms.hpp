#pragma once

#include <string>
#include <vector>

#include "cymod/arith.hpp"

namespace cymod {

struct HeckeCharSpec {
  std::string form_id;  // h3, h4, h7, h8
  int d = 1;            // field Q(sqrt(-d))
  i64 conductor_gen = 1;
  i64 level = 1;

  i64 discriminant() const { return field_discriminant(d); }
  i64 conductor_norm() const { return conductor_gen * conductor_gen; }
};

HeckeCharSpec hecke_spec(const std::string& form_id);
std::vector<std::string> hecke_form_ids();  // h8, h7, h3, h4

// Primes dividing the conductor generator: coefficients there come from eta products.
bool is_bad_prime(const HeckeCharSpec& s, i64 p);

enum class GeneratorSelection {
  normalized,    // pi = +-1 mod c
  first_listed,  // first norm-equation solution, no congruence imposed (negative control)
};

QuadFieldElement normalized_generator(const HeckeCharSpec& s, i64 p);
// Every unit multiple of every generator above p that is = +-1 mod c.
std::vector<QuadFieldElement> admissible_generators(const HeckeCharSpec& s, i64 p);

i64 ap(const HeckeCharSpec& s, i64 p, GeneratorSelection sel = GeneratorSelection::normalized);

// a_1..a_N (index 0 unused, set to 0).
std::vector<i64> coefficient_sequence(const HeckeCharSpec& s, i64 N,
                                      GeneratorSelection sel = GeneratorSelection::normalized);

i64 newtype(const HeckeCharSpec& s);

// Indices n <= N where the Hecke-character coefficients differ from the eta product.
std::vector<i64> verify_against_eta(const HeckeCharSpec& s, i64 N,
                                    GeneratorSelection sel = GeneratorSelection::normalized);

// tr(pi^2) = (u^2 - d v^2)/2 in the (u, v) encoding.
i64 trace_of_square(const QuadFieldElement& x);

}  // namespace cymod
