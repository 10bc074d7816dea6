#include "truncspaces/interpolation.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ts;
using doctest::Approx;

TEST_CASE("k functional examples") {
  std::vector<double> w0{1.0};
  for (double s0 : {1.0, 3.0})
    CHECK(k_functional(w0, 1.0, {0.0, s0, Exponent(1)}).value == Approx(1));
  std::vector<double> w2{0, 0, 1};
  CHECK(k_functional(w2, 0.25, {0.0, 1.0, Exponent(1)}).value == Approx(1));
  std::vector<double> zero(5, 0.0);
  CHECK(k_functional(zero, 0.3, {0.0, 1.0, Exponent(2)}).is_zero());
}

TEST_CASE("k functional against direct minimum") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> w(12);
    for (auto& x : w) x = u(g) < 0.4 ? 0.0 : u(g);
    double s = -1 + 2 * u(g), s0 = s + 0.25 + u(g), t_ = std::exp2(-10 * u(g));
    double q = (t % 3 == 0) ? 0.5 : 1 + 2 * u(g);
    oracle::ld sum = 0;
    for (std::size_t nu = 0; nu < w.size(); ++nu) {
      oracle::ld term = std::min(std::pow(2.0L, nu * s), t_ * std::pow(2.0L, nu * s0)) * w[nu];
      sum += std::pow(term, (oracle::ld)q);
    }
    auto got = k_functional(w, t_, {s, s0, Exponent(Scalar::real(q))});
    CHECK(oracle::close(got.value, std::pow(sum, 1.0L / q), 1e-12));
  }
}

TEST_CASE("limiting interpolation of a spike") {
  std::vector<double> w{1.0};
  WeightedLqPair pair{0.0, 1.0, Exponent(1)};
  auto r0 = limiting_interp_norm(w, 0, 0.0, Exponent(1), pair, 200);
  CHECK(r0.norm.value == Approx(2).epsilon(1e-12));
  // sum (1+j)^{-2} -> pi^2/6; the tail past J is about 1/J
  auto r1 = limiting_interp_norm(w, 1, -2.0, Exponent(1), pair, 100000);
  CHECK(r1.norm.value == Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(2e-5));
  CHECK_THROWS(limiting_interp_norm(w, 0, -2.0, Exponent(1), pair));
  CHECK_THROWS(limiting_interp_norm(w, 1, 0.0, Exponent(1), pair));
  CHECK(limiting_interp_norm(std::vector<double>(3, 0.0), 0, 0.0, Exponent(1), pair)
            .norm.is_zero());
}

TEST_CASE("limiting interpolation against direct sum") {
  std::vector<double> w{0.5, 0, 2, 0, 0, 1};
  WeightedLqPair pair{0.0, 1.0, Exponent(2)};
  const int J = 60;
  for (double b : {0.0, 0.5, 1.0}) {
    oracle::ld sum = 0;
    for (int j = 0; j <= J; ++j) {
      oracle::ld t = std::pow(2.0L, -j), kq = 0;
      for (std::size_t nu = 0; nu < w.size(); ++nu) {
        oracle::ld m = std::min<oracle::ld>(1.0L, t * std::pow(2.0L, nu)) * w[nu];
        kq += m * m;
      }
      oracle::ld term = std::pow(1.0L + j, (oracle::ld)b) * std::sqrt(kq);
      sum += term * term;
    }
    auto got = limiting_interp_norm(w, 0, b, Exponent(2), pair, J);
    CHECK(oracle::close(got.norm.value, std::sqrt(sum), 1e-12));
  }
}

TEST_CASE("hardy examples") {
  std::vector<double> e0{1.0};
  auto [l1, r1] = hardy_ratio(e0, 1.0, Exponent(1), 0.0, HardySide::H1);
  // LHS sums 2^{-j} over every j >= 0, as far as the grid runs
  CHECK(l1.value == Approx(2).epsilon(1e-6));
  CHECK(r1.value == Approx(1));
  auto [l2, r2] = hardy_ratio(e0, 1.0, Exponent(1), 0.0, HardySide::H2);
  CHECK(l2.value == Approx(1));
  CHECK(r2.value == Approx(1));
  auto [lz, rz] = hardy_ratio(std::vector<double>(4, 0.0), 1.0, Exponent(1), 0.0, HardySide::H1);
  CHECK(lz.is_zero());
  CHECK(rz.is_zero());
}

TEST_CASE("lambda grid") {
  CHECK(lambda_grid(1) == std::vector<double>{1.0, 0.5});
  CHECK(lambda_grid(3) == std::vector<double>{1.0, 0.5, 0.25, 1.0 / 16});
}

TEST_CASE("level profile of a sequence") {
  WaveletSequence l(1);
  l.set({0, 1, {0}}, 3);
  l.set({0, 1, {1}}, 4);
  l.set({2, 1, {0}}, 1);
  auto w = level_profile_of(l, Exponent(2));
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Approx(5));
  CHECK(w[1] == 0);
  CHECK(w[2] == Approx(1));
}
