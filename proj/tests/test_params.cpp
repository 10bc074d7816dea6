#include "truncspaces/descriptor.hpp"

#include <doctest.h>

using namespace ts;

namespace {

bool cites(const ValidationError& e, const std::string& what) {
  for (const auto& v : e.violations())
    if (v.citation.find(what) != std::string::npos) return true;
  return false;
}

SpaceDescriptor P(const char* text) { return parse_descriptor(text); }

}  // namespace

TEST_CASE("conjugate exponent") {
  CHECK(conjugate_exponent(Exponent(2)) == Exponent(2));
  CHECK(conjugate_exponent(Exponent(1)).is_infinite());
  CHECK(conjugate_exponent(Exponent(Scalar::fraction(1, 2))).is_infinite());
  // 1/4 + 1/p' = 1
  CHECK(conjugate_exponent(Exponent(4)) == Exponent(Scalar::fraction(4, 3)));
  CHECK(conjugate_exponent(Exponent::infinity()) == Exponent(1));
}

TEST_CASE("fractions stay exact") {
  auto d = P("TB(s=1,p=2,q=1,r=2,b=1/2,d=1)");
  CHECK(d.family == Family::TB);
  REQUIRE(d.b.is_rational());
  CHECK(d.b == Scalar::fraction(1, 2));
  CHECK(P("TB(s=0.1,p=2,q=1,r=2,b=0,d=1)").s == Scalar::fraction(1, 10));
  CHECK(P("TB(s=0,p=inf,q=1,r=2,b=1,d=1)").p.is_infinite());
}

TEST_CASE("validity") {
  try {
    P("TF(s=0,p=inf,q=2,r=1,b=1,d=1)");
    FAIL("accepted p=inf for F");
  } catch (const ValidationError& e) {
    CHECK(cites(e, "Def. 3.1(ii)"));
  }
  CHECK_NOTHROW(P("Lip(s=1,p=2,q=2,b=-1,d=1)"));
  CHECK_THROWS_AS(P("Lip(s=1,p=2,q=2,b=0,d=1)"), ValidationError);
  CHECK_THROWS_AS(P("Lip(s=1,p=2,q=2,b=-1/2,d=1)"), ValidationError);
  CHECK_NOTHROW(P("B0(b=0,p=2,q=1,d=2)"));
  CHECK(P("B0(b=0,p=2,q=1,d=2)").family == Family::BdiffZero);
}

TEST_CASE("dsl syntax errors carry a position") {
  try {
    parse_descriptor("TB(s=1,p=2,q=1,r=2,b=1/2,d=1");
    FAIL("accepted unterminated text");
  } catch (const DslError& e) {
    CHECK(e.position() > 0);
  }
  CHECK_THROWS_AS(parse_descriptor("XX(s=1)"), DslError);
  CHECK_THROWS_AS(parse_descriptor("TB(s=1,p=2,q=1,r=2,b=1/0,d=1)"), std::invalid_argument);
}

TEST_CASE("round trip") {
  for (const char* t :
       {"TB(s=1,p=2,q=1,r=2,b=1/2,d=1)", "TF(s=-3/4,p=3/2,q=inf,r=1,b=-2,d=3)",
        "Lip(s=1,p=2,q=2,b=-1,d=1)", "B0(b=0,p=2,q=1,d=2)", "B(s=1,p=2,q=3,b=1/2,d=1)",
        "TLor(u=2,q=1,r=1,b=1)"}) {
    auto d = parse_descriptor(t);
    CHECK(parse_descriptor(to_string(d)) == d);
  }
}

TEST_CASE("dual") {
  CHECK(dual_descriptor(P("TB(s=1,p=2,q=2,r=4,b=1/2,d=1)")) ==
        P("TB(s=-1,p=2,q=2,r=4/3,b=-1/2,d=1)"));
  CHECK(dual_descriptor(P("Lip(s=1,p=2,q=2,b=-1,d=1)")) == P("TF(s=-1,p=2,q=2,r=2,b=1/2,d=1)"));
  CHECK_THROWS_AS(dual_descriptor(P("TB(s=0,p=inf,q=1,r=1,b=1,d=1)")), OutOfPaperRange);
}

TEST_CASE("lift") {
  CHECK(lift_descriptor(P("TB(s=2,p=2,q=1,r=2,b=1,d=1)"), Scalar::fraction(1, 2)) ==
        P("TB(s=3/2,p=2,q=1,r=2,b=1,d=1)"));
  auto tf = P("TF(s=0,p=3,q=1,r=2,b=-1,d=2)");
  CHECK(lift_descriptor(tf, Scalar(0)) == tf);
  CHECK(lift_descriptor(P("Lip(s=1,p=2,q=2,b=-1,d=1)"), Scalar(1)) ==
        P("TF(s=0,p=2,q=2,r=2,b=-1/2,d=1)"));
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize_descriptor(P("B(s=1,p=2,q=3,b=1/2,d=1)")).descriptor ==
        P("TB(s=1,p=2,q=3,r=3,b=1/2,d=1)"));
  CHECK(canonicalize_descriptor(P("B0(b=0,p=2,q=1,d=1)")).descriptor ==
        P("TF(s=0,p=2,q=2,r=1,b=1,d=1)"));
  auto tb = P("TB(s=1,p=2,q=1,r=2,b=1/2,d=1)");
  CHECK(canonicalize_descriptor(tb).descriptor == tb);
  CHECK(canonicalize_descriptor(P("Lip(s=1,p=2,q=2,b=-1,d=1)")).descriptor ==
        P("TF(s=1,p=2,q=2,r=2,b=-1/2,d=1)"));
  // no truncated F form outside 1 < p < inf
  for (const char* t : {"B0(b=1,p=inf,q=2,d=1)", "Lip(s=1,p=1,q=2,b=-1,d=2)"}) {
    auto c = canonicalize_descriptor(P(t));
    CHECK(c.descriptor == P(t));
    CHECK(validate_descriptor(c.descriptor).empty());
  }
}
