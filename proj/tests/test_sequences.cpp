#include "truncspaces/generators.hpp"
#include "truncspaces/norms.hpp"
#include "truncspaces/sequence.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace ts;

TEST_CASE("block_of") {
  CHECK(block_of(0).k == 0);
  CHECK(block_of(2).k == 1);
  CHECK(block_of(6).k == 2);
  CHECK(block_of(7).k == 3);
  for (int j = 0; j < 5000; ++j) {
    auto b = block_of(j);
    CHECK(b.k == oracle::block(j));
    CHECK(b.first() <= j);
    CHECK(j <= b.last());
  }
  CHECK(block_of(std::int64_t{1} << 40).k == 40);
  CHECK_THROWS(block_of(-1));
}

TEST_CASE("rearrange") {
  auto r = rearrange(ScalarSequence::finite({{1, 3}, {2, 1}, {3, 2}}));
  CHECK(r.at(1) == 3);
  CHECK(r.at(2) == 2);
  CHECK(r.at(3) == 1);
  CHECK(r.at(4) == 0);
  CHECK(rearrange(ScalarSequence::finite({{1, 5}})).at(2) == 0);
  auto ties = rearrange(ScalarSequence::finite({{1, 1}, {2, 1}, {3, 1}}));
  CHECK(ties.at(3) == 1);
  CHECK(ties.at(4) == 0);
  auto gap = rearrange(ScalarSequence::finite({{7, 2}, {100, 9}}));
  CHECK(gap.at(1) == 9);
  CHECK(gap.at(2) == 2);
}

TEST_CASE("scalar sequence validation") {
  CHECK_THROWS(ScalarSequence::finite({{0, 1}}));
  CHECK_THROWS(ScalarSequence::finite({{1, -1}}));
  auto j = nlohmann::json::parse(R"({"values": {"1": 2.5, "4": 1}})");
  auto a = scalar_sequence_from_json(j);
  CHECK(a.at(1) == 2.5);
  CHECK(a.at(4) == 1);
  CHECK(a.at(2) == 0);
  auto rule = scalar_sequence_from_json(
      nlohmann::json::parse(R"({"rule": "power", "alpha": 2, "beta": 0, "N": 10})"));
  CHECK(rule.at(3) == doctest::Approx(1.0 / 9));
  CHECK(rule.at(11) == 0);
}

TEST_CASE("wavelet sequence invariants") {
  WaveletSequence l(2);
  CHECK_THROWS(l.set({-1, 3, {0, 0}}, 1.0));
  CHECK_THROWS(l.set({1, 0, {0, 0}}, 1.0));   // j >= 1 needs an M component
  CHECK_THROWS(l.set({1, 4, {0, 0}}, 1.0));   // mask too wide
  CHECK_THROWS(l.set({1, 3, {0}}, 1.0));      // wrong arity
  CHECK_THROWS(l.set({0, 0, {0, 0}}, NAN));
  CHECK_NOTHROW(l.set({0, 0, {0, 0}}, 1.0));
  l.set({0, 0, {0, 0}}, 0.0);
  CHECK(l.empty());
}

TEST_CASE("json round trip and rejection") {
  std::mt19937_64 g(7);
  for (int t = 0; t < 50; ++t) {
    auto l = oracle::random_sequence(g, 1 + t % 2, 6);
    CHECK(sequence_from_json(to_json(l)) == l);
  }
  CHECK_THROWS(sequence_from_json(nlohmann::json::parse(
      R"({"dim": 1, "entries": [{"j": 1, "G": 0, "m": [0], "v": 1}]})")));
  CHECK_THROWS(sequence_from_json(nlohmann::json::parse(
      R"({"dim": 1, "entries": [{"j": 0, "G": 1, "m": [0], "v": 1}, {"j": 0, "G": 1, "m": [0], "v": 2}]})")));
  CHECK_THROWS(sequence_from_json(nlohmann::json::parse(R"({"dim": 1})")));
}

TEST_CASE("lift_sequence") {
  WaveletSequence a(1), b(1);
  a.set({2, 1, {0}}, 1.0);
  b.set({1, 1, {0}}, 3.0);
  CHECK(lift_sequence(a, 0.0) == a);
  auto la = lift_sequence(a, 1.0);
  CHECK(la.magnitude({2, 1, {0}}, la.stored({2, 1, {0}})).to_double() == 4.0);
  auto lb = lift_sequence(b, -1.0);
  CHECK(lb.magnitude({1, 1, {0}}, lb.stored({1, 1, {0}})).to_double() == 1.5);
}

TEST_CASE("spike") {
  auto e = gen_extremal(WitnessKind::Spike, {{"j0", 0}}, 5);
  auto& l = std::get<WaveletSequence>(e);
  REQUIRE(l.size() == 1);
  auto [k, v] = *l.entries().begin();
  CHECK(k.j == 0);
  CHECK(k.G == all_m_mask(1));
  CHECK(k.m == std::vector<std::int64_t>{0});
  CHECK(v == 1.0);
}

TEST_CASE("lacunary diagonal") {
  // levels j = 2^k, k < L, coefficient 2^{-2^k (s - d/p)} 2^{-k eps}; s = d/p here
  auto e = gen_extremal(WitnessKind::LacunaryDiagonal, {{"s", 0}, {"p", INFINITY}, {"eps", 1}}, 2);
  auto l = std::get<LevelProfile>(e).materialize();
  REQUIRE(l.size() == 2);
  auto it = l.entries().begin();
  CHECK(it->first.j == 1);
  CHECK(l.magnitude(it->first, it->second).to_double() == 1.0);
  ++it;
  CHECK(it->first.j == 2);
  CHECK(l.magnitude(it->first, it->second).to_double() == 0.5);

  // s - d/p = 1: the extra factor 2^{-2^k}
  auto f = gen_extremal(WitnessKind::LacunaryDiagonal, {{"s", 3}, {"p", 0.5}, {"eps", 0}}, 4);
  auto lf = std::get<LevelProfile>(f).materialize();
  for (const auto& [k, v] : lf.entries())
    CHECK(lf.magnitude(k, v).to_double() == doctest::Approx(std::exp2(-k.j)));
}

TEST_CASE("spatial spread") {
  auto e = gen_extremal(WitnessKind::SpatialSpread, {{"eps", 0.7}}, 3);
  auto& l = std::get<WaveletSequence>(e);
  double mass = 0;
  for (const auto& [k, v] : l.entries()) {
    CHECK(k.j == 0);
    mass += v;
  }
  CHECK(mass == doctest::Approx(1.0 + std::pow(2.0, -0.7) + std::pow(3.0, -0.7)).epsilon(1e-14));
  CHECK(besov_seq_norm(l, 0, Exponent(1), Exponent(1), 0).value ==
        doctest::Approx(mass).epsilon(1e-14));
}

TEST_CASE("spread level counts") {
  // |M_j| = ceil(2^{jd} (1+j)^{-beta})
  auto e = gen_extremal(WitnessKind::SpreadLevel, {{"beta", 1.5}, {"eps", 0}, {"d", 2}}, 6);
  const auto& P = std::get<LevelProfile>(e);
  for (const auto& lv : P.levels) {
    double j = static_cast<double>(lv.index);
    double want = std::ceil(std::exp2(2 * j) * std::pow(1 + j, -1.5));
    CHECK(std::exp2(lv.log2_count) == doctest::Approx(want).epsilon(1e-12));
  }
  auto l = P.materialize();
  std::map<int, int> per_level;
  for (const auto& [k, v] : l.entries()) per_level[k.j]++;
  for (const auto& lv : P.levels)
    CHECK(per_level[static_cast<int>(lv.index)] ==
          static_cast<int>(std::llround(std::exp2(lv.log2_count))));
}

TEST_CASE("profiles agree with their materialization") {
  std::vector<std::pair<WitnessKind, std::map<std::string, double>>> kinds = {
      {WitnessKind::PowerDiagonal, {{"s", 1}, {"p", 2}, {"eps", 0.7}}},
      {WitnessKind::LogRefined, {{"s", 1}, {"p", 2}, {"b", 0.2}, {"q", 2}, {"beta", 1}}},
      {WitnessKind::SpreadLevel, {{"beta", 0.5}, {"eps", 0.3}}},
      {WitnessKind::FullFillLevel, {}},
      {WitnessKind::LacunaryDiagonal, {{"s", 1}, {"p", 2}, {"eps", 0.5}}},
  };
  for (const auto& [kind, params] : kinds) {
    CAPTURE(witness_name(kind));
    auto P = std::get<LevelProfile>(gen_extremal(kind, params, 4));
    auto l = P.materialize();
    for (double s : {0.0, 0.5}) {
      auto a = trunc_besov_seq_norm(P, s, Exponent(2), Exponent(1), Exponent(2), 0.5);
      auto b = trunc_besov_seq_norm(l, s, Exponent(2), Exponent(1), Exponent(2), 0.5);
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
      auto fa = trunc_f_seq_norm(P, s, Exponent(2), Exponent(1), Exponent(2), 0.5);
      auto fb = trunc_f_seq_norm(l, s, Exponent(2), Exponent(1), Exponent(2), 0.5);
      CHECK(fa.value == doctest::Approx(fb.value).epsilon(1e-12));
    }
  }
}
