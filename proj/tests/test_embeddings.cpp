#include "truncspaces/embeddings.hpp"

#include <doctest.h>

#include <random>

using namespace ts;

namespace {

SpaceDescriptor P(const std::string& t) { return parse_descriptor(t); }

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

// random valid TB/TF with b != 0
SpaceDescriptor random_desc(std::mt19937_64& g, int d, bool allow_f = true) {
  static const char* S[] = {"-1", "0", "1/2", "1", "2"};
  static const char* PQ[] = {"1/2", "1", "2", "4", "inf"};
  static const char* B[] = {"-1", "-1/2", "1/3", "1"};
  auto pick = [&](auto& arr) { return arr[g() % std::size(arr)]; };
  bool f = allow_f && g() % 2;
  std::string p = pick(PQ);
  if (f && p == "inf") p = "2";
  std::string text = std::string(f ? "TF" : "TB") + "(s=" + pick(S) + ",p=" + p +
                     ",q=" + pick(PQ) + ",r=" + pick(PQ) + ",b=" + pick(B) +
                     ",d=" + std::to_string(d) + ")";
  return P(text);
}

}  // namespace

TEST_CASE("examples") {
  auto v = embeds(P("TB(s=1,p=1,q=1,r=1,b=1,d=1)"), P("TB(s=0,p=2,q=5,r=7,b=-3,d=1)"));
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.condition == "Thm10.1(i)");

  v = embeds(P("TB(s=1,p=2,q=1,r=3,b=1/2,d=1)"), P("TB(s=1,p=2,q=2,r=1,b=1/5,d=1)"));
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.condition == "Thm10.1(ii)");

  v = embeds(P("TB(s=1,p=2,q=1,r=1,b=1,d=1)"), P("TB(s=1,p=1,q=1,r=1,b=1,d=1)"));
  CHECK(v.status == VerdictStatus::Fails);
  REQUIRE(v.witness);
  CHECK(v.witness->kind == WitnessKind::SpatialSpread);

  v = embeds(P("TB(s=1,p=2,q=1,r=1,b=1/2,d=1)"), P("TB(s=1,p=2,q=1,r=1,b=1,d=1)"));
  CHECK(v.status == VerdictStatus::Fails);
  REQUIRE(v.witness);
  CHECK(v.witness->kind == WitnessKind::LacunaryDiagonal);
  CHECK(v.witness->params.at("eps") == doctest::Approx(0.75));

  CHECK_THROWS_AS(embeds(P("TF(s=1,p=2,q=3,r=1,b=9/10,d=1)"), P("TB(s=1,p=2,q=1,r=2,b=0,d=1)")),
                  UnsupportedPair);
}

TEST_CASE("local integrability") {
  auto v = embeds_L1loc(P("TB(s=1,p=2,q=7,r=9,b=-5,d=3)"));
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.condition == "Thm15.3(i)");
  v = embeds_L1loc(P("TB(s=0,p=2,q=3,r=1,b=1/6,d=1)"));
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.condition == "Thm15.3(vi)");
  v = embeds_L1loc(P("TB(s=0,p=2,q=3,r=3,b=1/6,d=1)"));
  CHECK(v.status == VerdictStatus::Fails);
  CHECK(starts_with(v.condition, "Thm15.3"));
  CHECK(v.witness);
  // strict inequality once r > p
  CHECK(embeds_L1loc(P("TB(s=0,p=2,q=3,r=3,b=1/5,d=1)")).status == VerdictStatus::Holds);
  CHECK_THROWS_AS(embeds_L1loc(P("TB(s=0,p=2,q=3,r=3,b=0,d=1)")), UnsupportedPair);
}

TEST_CASE("continuity") {
  auto v = embeds_C(P("TB(s=2,p=1,q=9,r=9,b=-1,d=1)"));
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.condition == "Thm16.2(i)");
  v = embeds_C(P("TB(s=1,p=1,q=2,r=2,b=3/5,d=1)"));
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.condition == "Thm16.2(v)");
  CHECK(embeds_C(P("TB(s=1,p=1,q=2,r=2,b=1/2,d=1)")).status != VerdictStatus::Holds);
  v = embeds_C(P("TB(s=1/2,p=1,q=2,r=2,b=3/5,d=1)"));
  CHECK(v.status == VerdictStatus::Fails);
  REQUIRE(v.witness);
  CHECK(v.witness->kind == WitnessKind::Spike);
  // b = 0 keeps only the sufficient direction
  CHECK(embeds_C(P("TB(s=2,p=1,q=2,r=2,b=0,d=1)")).status == VerdictStatus::Holds);
  CHECK(embeds_C(P("TB(s=1,p=1,q=2,r=2,b=0,d=1)")).status == VerdictStatus::UnknownPerPaper);
}

TEST_CASE("gm into Lp") {
  auto v = gm_embeds_Lp(Scalar(1), Exponent(2), Exponent(1), Exponent(1), Scalar(-5), 1);
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.condition.ends_with("(i)"));
  v = gm_embeds_Lp(Scalar(0), Exponent(2), Exponent(3), Exponent(2), Scalar::fraction(1, 6), 1);
  CHECK(v.status == VerdictStatus::Holds);
  CHECK(v.condition.ends_with("(iii)"));
  v = gm_embeds_Lp(Scalar(-1), Exponent(2), Exponent(3), Exponent(2), Scalar::fraction(1, 6), 1);
  CHECK(v.status == VerdictStatus::Fails);
}

TEST_CASE("lorentz") {
  auto a = P("TLor(u=2,q=1,r=1,b=1)");
  CHECK(embeds_lorentz(a, a).status == VerdictStatus::Holds);
  CHECK_THROWS_AS(embeds_lorentz(a, P("TLor(u=3,q=1,r=1,b=1)")), UnsupportedPair);
  CHECK(embeds_lorentz(P("LZ(u=2,q=1,b=1)"), a).status == VerdictStatus::Holds);
}

TEST_CASE("reflexive") {
  std::mt19937_64 g(1);
  for (int t = 0; t < 500; ++t) {
    auto x = random_desc(g, 1 + t % 3);
    CAPTURE(to_string(x));
    CHECK(embeds(x, x).status == VerdictStatus::Holds);
  }
}

TEST_CASE("fails carry witnesses and holds do not") {
  std::mt19937_64 g(2);
  int fails = 0;
  for (int t = 0; t < 4000; ++t) {
    int d = 1 + t % 2;
    auto a = random_desc(g, d), b = random_desc(g, d);
    try {
      auto v = embeds(a, b);
      CAPTURE(to_string(a));
      CAPTURE(to_string(b));
      CHECK_FALSE(v.condition.empty());
      CHECK_FALSE(v.citation.empty());
      if (v.status == VerdictStatus::Fails) {
        ++fails;
        CHECK(v.witness.has_value());
        CHECK(v.condition.find("needs") != std::string::npos);
      }
      if (v.status == VerdictStatus::Holds) CHECK_FALSE(v.witness.has_value());
    } catch (const UnsupportedPair&) {
    }
  }
  CHECK(fails > 100);
}

TEST_CASE("transitive") {
  std::mt19937_64 g(3);
  int chains = 0;
  for (int t = 0; t < 20000; ++t) {
    auto a = random_desc(g, 1), b = random_desc(g, 1), c = random_desc(g, 1);
    try {
      if (embeds(a, b).status != VerdictStatus::Holds) continue;
      if (embeds(b, c).status != VerdictStatus::Holds) continue;
      ++chains;
      CAPTURE(to_string(a));
      CAPTURE(to_string(b));
      CAPTURE(to_string(c));
      CHECK(embeds(a, c).status != VerdictStatus::Fails);
    } catch (const UnsupportedPair&) {
    }
  }
  CHECK(chains > 50);
}

TEST_CASE("lowering the target weight keeps an embedding") {
  std::mt19937_64 g(4);
  for (int t = 0; t < 3000; ++t) {
    auto a = random_desc(g, 1), b = random_desc(g, 1);
    auto lower = b;
    lower.b = b.b - Scalar(1);
    if (lower.b == Scalar(0)) continue;
    try {
      if (embeds(a, b).status != VerdictStatus::Holds) continue;
      CAPTURE(to_string(a));
      CAPTURE(to_string(b));
      CHECK(embeds(a, lower).status == VerdictStatus::Holds);
    } catch (const UnsupportedPair&) {
    }
  }
}

TEST_CASE("boundaries are decided exactly") {
  // b0 = b1 = 1/3 exactly, against a decimal neighbour
  auto x = P("TB(s=1,p=2,q=1,r=1,b=1/3,d=1)");
  CHECK(embeds(x, x).status == VerdictStatus::Holds);
  CHECK(embeds(x, P("TB(s=1,p=2,q=1,r=1,b=0.3333333333333333,d=1)")).status ==
        VerdictStatus::Holds);
  CHECK(embeds(P("TB(s=1,p=2,q=1,r=1,b=0.3333333333333333,d=1)"), x).status ==
        VerdictStatus::Fails);
}
