#pragma once

#include <string>
#include <vector>

#include "drinfeld/rational.hpp"

namespace drinfeld {

// Element of F_inf = F_q((pi)), pi = 1/T, known modulo pi^precision.
// Stored as pi^v * (c[0] + c[1] pi + ...), c[0] != 0. A series with no
// known nonzero coefficient is "zero within precision" (v == precision).
class LaurentSeries {
 public:
  using Elem = Fq::Elem;

  LaurentSeries() = default;
  // O(pi^prec).
  LaurentSeries(const Fq& F, int prec);
  LaurentSeries(const Fq& F, int v, std::vector<Elem> c, int prec);

  static LaurentSeries from_poly(const PolyA& a, int prec);
  // Expansion of x at infinity, correct modulo pi^prec.
  static LaurentSeries expand(const RationalFunc& x, int prec);
  static LaurentSeries constant(const Fq& F, Elem c, int prec);

  const Fq& field() const { return *F_; }
  bool is_zero() const { return c_.empty(); }
  // Throws PrecisionError when zero within precision.
  int valuation() const;
  int precision() const { return prec_; }
  int relative_precision() const { return prec_ - v_; }
  // Coefficient of pi^j; throws PrecisionError for j >= precision.
  Elem coeff(int j) const;
  Elem lead() const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries scaled(Elem c) const;
  LaurentSeries inv() const;
  LaurentSeries frob() const;  // x^q
  LaurentSeries pow(long long n) const;
  LaurentSeries truncated(int prec) const;

  // Coefficients agree at every exponent below both precisions.
  bool agrees_with(const LaurentSeries& b) const;
  // Lowest exponent below both precisions where they differ, or the
  // common precision if none.
  int first_difference(const LaurentSeries& b) const;

  // Coefficients from the valuation on; entries missing before the
  // precision horizon are zero.
  const std::vector<Elem>& window() const { return c_; }
  std::string to_string() const;

 private:
  void normalize();
  const Fq* F_ = nullptr;
  int v_ = 0;
  std::vector<Elem> c_;
  int prec_ = 0;
};

}  // namespace drinfeld
