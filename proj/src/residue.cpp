#include "drinfeld/residue.hpp"

#include "drinfeld/errors.hpp"

namespace drinfeld {

ResidueRing::ResidueRing(const PolyA& modulus) : n_(modulus) {
  if (!n_.is_monic() || n_.degree() < 1)
    throw DomainError("residue modulus must be monic of positive degree");
  size_ = n_.norm();
}

std::uint64_t ResidueRing::unit_count() const {
  std::uint64_t r = 1;
  for (auto& [pr, m] : factor(n_)) {
    std::uint64_t np = pr.norm();
    r *= np - 1;
    for (int i = 1; i < m; ++i) r *= np;
  }
  return r;
}

bool ResidueRing::is_unit(const PolyA& a) const { return gcd(a % n_, n_).is_one(); }

PolyA ResidueRing::inv(const PolyA& a) const { return invmod(a, n_); }

}  // namespace drinfeld
