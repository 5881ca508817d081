#include <functional>
#include <random>

#include "doctest.h"
#include "drinfeld/errors.hpp"
#include "drinfeld/linalg.hpp"

using namespace drinfeld;

namespace {

ZMatrix random_int(int r, int c, int bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-bound, bound);
  ZMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

// gcd of all k x k minors
Int determinantal_divisor(const ZMatrix& m, int k) {
  Int g = 0;
  std::vector<int> rs, cs;
  std::function<void(int, int)> pick_cols;
  std::function<void(int)> pick_rows = [&](int start) {
    if (static_cast<int>(rs.size()) == k) {
      pick_cols(0, 0);
      return;
    }
    for (int i = start; i < m.rows(); ++i) {
      rs.push_back(i);
      pick_rows(i + 1);
      rs.pop_back();
    }
  };
  pick_cols = [&](int start, int) {
    if (static_cast<int>(cs.size()) == k) {
      QMatrix sub(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) sub.at(a, b) = m.at(rs[a], cs[b]);
      Rat d = determinant(sub);
      g = gcd(g, Int(d.get_num()));
      return;
    }
    for (int j = start; j < m.cols(); ++j) {
      cs.push_back(j);
      pick_cols(j + 1, 0);
      cs.pop_back();
    }
  };
  pick_rows(0);
  return g;
}

}  // namespace

TEST_CASE("Smith form against determinantal divisors") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 40; ++it) {
    int r = 1 + it % 4, c = 1 + (it / 4) % 4;
    ZMatrix a = random_int(r, c, 6, rng);
    if (it % 5 == 0) a = a.scaled(6);
    auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == [&] {
      ZMatrix D(r, c);
      for (int i = 0; i < std::min(r, c); ++i) D.at(i, i) = s.diag[i];
      return D;
    }());
    CHECK(abs(Int(determinant(to_rational(s.U)).get_num())) == 1);
    CHECK(abs(Int(determinant(to_rational(s.V)).get_num())) == 1);
    Int prev = 1;
    for (int k = 1; k <= std::min(r, c); ++k) {
      Int dk = determinantal_divisor(a, k);
      if (dk == 0) {
        CHECK(s.diag[k - 1] == 0);
        continue;
      }
      CHECK(s.diag[k - 1] == dk / prev);
      prev = dk;
    }
    for (int k = 1; k < std::min(r, c); ++k)
      if (s.diag[k] != 0) CHECK(s.diag[k] % s.diag[k - 1] == 0);
  }
}

TEST_CASE("Hermite form is canonical for the row lattice") {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 30; ++it) {
    ZMatrix a = random_int(3, 4, 5, rng);
    ZMatrix u = ZMatrix::identity(3);
    // random unimodular change of generators
    u.at(1, 0) = 2;
    u.at(2, 1) = -3;
    std::swap(u.at(0, 0), u.at(0, 1));  // still det +-1 after the column swap
    std::swap(u.at(1, 0), u.at(1, 1));
    std::swap(u.at(2, 0), u.at(2, 1));
    CHECK(hermite_normal_form(a) == hermite_normal_form(u * a));
    ZMatrix twice(6, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) twice.at(i, j) = twice.at(i + 3, j) = a.at(i, j);
    CHECK(hermite_normal_form(a) == hermite_normal_form(twice));
  }
}

TEST_CASE("kernel, solve, saturation and index") {
  QMatrix m = QMatrix::from_rows({{1, 2, 3}, {2, 4, 6}});
  auto k = kernel(m);
  CHECK(k.size() == 2);
  for (auto& v : k) {
    auto z = m.apply(v);
    for (auto& x : z) CHECK(x == 0);
  }
  CHECK(rank(m) == 1);
  CHECK_FALSE(solve(m, {1, 3}).has_value());
  auto x = solve(m, {1, 2});
  REQUIRE(x.has_value());
  CHECK(m.apply(*x) == std::vector<Rat>{1, 2});

  // 2 e1 and 2 e1 + 4 e2 saturate to Z^2
  ZMatrix g = ZMatrix::from_rows({{2, 0}, {2, 4}});
  CHECK(saturate_rows(g) == ZMatrix::identity(2));
  ZMatrix line = ZMatrix::from_rows({{3, 6, 9}});
  CHECK(saturate_rows(line) == ZMatrix::from_rows({{1, 2, 3}}));
  auto idx = lattice_index(ZMatrix::identity(2), g);
  REQUIRE(idx.has_value());
  CHECK(*idx == 8);
  CHECK_FALSE(lattice_index(ZMatrix::identity(2), ZMatrix::from_rows({{1, 1}})).has_value());
}

TEST_CASE("characteristic polynomial") {
  QMatrix m = QMatrix::from_rows({{2, 1}, {1, 2}});
  CHECK(characteristic_polynomial(m) == std::vector<Rat>{3, -4, 1});
  std::mt19937_64 rng(47);
  for (int it = 0; it < 10; ++it) {
    QMatrix a = to_rational(random_int(4, 4, 4, rng));
    auto c = characteristic_polynomial(a);
    // Cayley-Hamilton
    QMatrix acc(4, 4), pw = QMatrix::identity(4);
    for (int i = 0; i <= 4; ++i) {
      acc = acc + pw.scaled(c[i]);
      pw = pw * a;
    }
    CHECK(acc.is_zero());
    CHECK(c[0] == determinant(a));
  }
}
