#pragma once

#include <string>
#include <vector>

#include "drinfeld/harmonic.hpp"

namespace drinfeld {

// (|p| - 1) / gcd(q^2 - 1, |p| - 1).
mpz_class cuspidal_order_rank2(const PolyA& p);
// (|p|^{r-1} - 1) / gcd(q^r - 1, |p| - 1), r >= 2.
mpz_class cuspidal_order_rank_r(const PolyA& p, int r);

// Z-span of the Hecke matrices T_m, deg m <= B, flattened row-major.
struct HeckeAlgebraLattice {
  int B = 0;
  int dim = 0;                       // size of the cuspidal basis
  std::vector<HeckeMatrix> generators;
  ZMatrix basis;                     // HNF rows
  bool closed_under_products = false;
};
HeckeAlgebraLattice hecke_algebra(const std::vector<Cochain>& cusp_basis, int B, int jobs = 1);

struct PrimeComparison {
  mpz_class ell;
  int index_exponent = 0;
  int predicted_exponent = 0;
  bool in_scope = false;  // ell does not divide p(q-1)
  bool match = false;
};

struct EisensteinIdealReport {
  PolyA level;
  int B = 0;                          // first stable generator degree
  mpz_class index;                    // [T : E T]
  mpz_class index_at_next_B;          // recomputed at B + 1
  std::vector<mpz_class> elementary_divisors;
  mpz_class predicted_order;          // cuspidal_order_rank2 (prime levels)
  mpz_class odd_part;
  std::vector<PrimeComparison> primes;
  Rat eisenstein_constant;            // E0(pi) of the normalized Eisenstein cochain
  ZMatrix coordinates;                // generators of E T in the HNF basis of T
  bool all_in_scope_match = false;
};

// Builds T(n) from T_m, deg m <= B, raising B until the lattice is the same
// for B and B + 1 (up to B_max), then the index of the Eisenstein ideal
// generated by T_P - (|P| + 1), P prime not dividing n, deg P <= B + 1.
EisensteinIdealReport eisenstein_index(const PolyA& n, int B_start = 1, int B_max = 6, int jobs = 1);

}  // namespace drinfeld
