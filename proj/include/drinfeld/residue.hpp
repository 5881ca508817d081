#pragma once

#include <cstdint>
#include <vector>

#include "drinfeld/poly_a.hpp"

namespace drinfeld {

// A/nA for a monic n of positive degree. Elements are reduced PolyA values;
// index() gives a dense code in [0, size()).
class ResidueRing {
 public:
  explicit ResidueRing(const PolyA& modulus);

  const Fq& field() const { return n_.field(); }
  const PolyA& modulus() const { return n_; }
  int degree() const { return n_.degree(); }
  std::uint64_t size() const { return size_; }
  // Order of (A/n)^x.
  std::uint64_t unit_count() const;

  PolyA reduce(const PolyA& a) const { return a % n_; }
  PolyA add(const PolyA& a, const PolyA& b) const { return (a + b) % n_; }
  PolyA sub(const PolyA& a, const PolyA& b) const { return (a - b) % n_; }
  PolyA mul(const PolyA& a, const PolyA& b) const { return (a * b) % n_; }
  bool is_unit(const PolyA& a) const;
  PolyA inv(const PolyA& a) const;  // throws DomainError for non-units

  std::uint64_t index(const PolyA& reduced) const { return reduced.code(); }
  PolyA element(std::uint64_t index) const { return PolyA::from_code(field(), index); }

 private:
  PolyA n_;
  std::uint64_t size_;
};

}  // namespace drinfeld
