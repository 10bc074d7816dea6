#include "truncspaces/descriptor.hpp"

#include <array>
#include <cctype>
#include <set>

namespace ts {

namespace {

struct FamilyKeys {
  Family family;
  std::string_view tag;
  std::string_view required;  // one char per key, in print order
};

constexpr std::array<FamilyKeys, 10> kFamilies{{
    {Family::TB, "TB", "spqrb"},
    {Family::TF, "TF", "spqrb"},
    {Family::TstarB, "TSB", "spqr"},
    {Family::TstarF, "TSF", "spqr"},
    {Family::B, "B", "sbpq"},
    {Family::F, "F", "sbpq"},
    {Family::BdiffZero, "B0", "bpq"},
    {Family::Lip, "Lip", "sbpq"},
    {Family::TLorentz, "TLor", "uqrb"},
    {Family::LorentzZygmund, "LZ", "uqb"},
}};

const FamilyKeys& keys_of(Family f) {
  for (const auto& k : kFamilies)
    if (k.family == f) return k;
  throw std::logic_error("unknown family");
}

bool has_r(Family f) { return keys_of(f).required.find('r') != std::string_view::npos; }

bool is_lorentz(Family f) {
  return f == Family::TLorentz || f == Family::LorentzZygmund;
}

bool is_f_family(Family f) {
  return f == Family::TF || f == Family::TstarF || f == Family::F;
}

std::string describe(const std::vector<Violation>& v) {
  std::string out = "invalid descriptor:";
  for (const auto& x : v) out += " " + x.constraint + " [" + x.citation + "];";
  return out;
}

SpaceDescriptor make_tf(const Scalar& s, const Exponent& p, const Exponent& q,
                        const Exponent& r, const Scalar& b, int d) {
  SpaceDescriptor out;
  out.family = Family::TF;
  out.s = s;
  out.p = p;
  out.q = q;
  out.r = r;
  out.b = b;
  out.d = d;
  return out;
}

}  // namespace

std::string_view family_tag(Family f) { return keys_of(f).tag; }

ValidationError::ValidationError(std::vector<Violation> v)
    : std::invalid_argument(describe(v)), v_(std::move(v)) {}

DslError::DslError(const std::string& what, std::size_t pos)
    : std::invalid_argument(what + " at position " + std::to_string(pos)), pos_(pos) {}

std::vector<Violation> validate_descriptor(const SpaceDescriptor& desc) {
  std::vector<Violation> out;
  if (desc.d < 1) out.push_back({"dimension d must be a positive integer", "Def. 3.1"});
  if (has_r(desc.family) && !desc.r)
    out.push_back({"family requires the truncation exponent r", "Def. 3.1"});
  if (!has_r(desc.family) && desc.r)
    out.push_back({"family takes no truncation exponent r", "Def. 3.1"});
  if (is_f_family(desc.family) && desc.p.is_infinite())
    out.push_back({"F-family requires p<inf", "Def. 3.1(ii)"});
  const Scalar inv_q = desc.q.reciprocal();
  if (desc.family == Family::BdiffZero && !(desc.b > -inv_q))
    out.push_back({"B0 requires b > -1/q", "Prop 3.3(iii)"});
  if (desc.family == Family::Lip) {
    if (!(desc.s > Scalar(0))) out.push_back({"Lip requires s > 0", "Prop 3.3(iv)"});
    if (!(desc.b < -inv_q)) out.push_back({"Lip requires b < -1/q", "Prop 3.3(iv)"});
  }
  if (is_lorentz(desc.family)) {
    if (!desc.u)
      out.push_back({"Lorentz family requires u", "Def. truncated Lorentz space"});
    else if (desc.u->is_infinite())
      out.push_back({"Lorentz family requires u<inf", "Def. truncated Lorentz space"});
  } else if (desc.u) {
    out.push_back({"only Lorentz families take u", "Def. 3.1"});
  }
  return out;
}

SpaceDescriptor dual_descriptor(const SpaceDescriptor& desc) {
  if (auto v = validate_descriptor(desc); !v.empty()) throw ValidationError(v);
  const Exponent one(1);
  const auto inf = Exponent::infinity();
  auto in_closed_open = [&](const Exponent& x) { return x >= one && x < inf; };
  auto in_open = [&](const Exponent& x) { return x > one && x < inf; };
  switch (desc.family) {
    case Family::TB:
    case Family::TF: {
      bool tb = desc.family == Family::TB;
      bool ok = tb ? in_closed_open(desc.p) && in_closed_open(desc.q)
                   : in_open(desc.p) && in_open(desc.q);
      if (!ok || desc.r->is_infinite() || desc.b == Scalar(0))
        throw OutOfPaperRange(tb ? "Thm 9.1(i) requires p,q in [1,inf), r<inf, b!=0"
                                 : "Thm 9.1(ii) requires p,q in (1,inf), r<inf, b!=0");
      SpaceDescriptor out = desc;
      out.s = -desc.s;
      out.p = conjugate_exponent(desc.p);
      out.q = conjugate_exponent(desc.q);
      out.r = conjugate_exponent(*desc.r);
      out.b = -desc.b;
      return out;
    }
    case Family::BdiffZero:
    case Family::Lip: {
      if (!in_open(desc.p) || desc.q.is_infinite())
        throw OutOfPaperRange(desc.family == Family::Lip
                                  ? "Thm 9.8 requires p in (1,inf), q<inf"
                                  : "Thm 9.6 requires p in (1,inf), q<inf");
      Scalar s = desc.family == Family::Lip ? -desc.s : Scalar(0);
      return make_tf(s, conjugate_exponent(desc.p), Exponent(2),
                     conjugate_exponent(desc.q), -desc.b - desc.q.reciprocal(), desc.d);
    }
    default:
      throw OutOfPaperRange("no duality statement for family " +
                            std::string(family_tag(desc.family)));
  }
}

SpaceDescriptor lift_descriptor(const SpaceDescriptor& desc, const Scalar& sigma) {
  SpaceDescriptor base = desc;
  if (desc.family == Family::BdiffZero || desc.family == Family::Lip)
    base = canonicalize_descriptor(desc).descriptor;
  if (is_lorentz(base.family))
    throw std::invalid_argument("lifting is not defined for Lorentz sequence spaces");
  base.s = base.s - sigma;
  return base;
}

CanonicalForm canonicalize_descriptor(const SpaceDescriptor& desc) {
  if (auto v = validate_descriptor(desc); !v.empty()) throw ValidationError(v);
  // the truncated F form of B0 and Lip only exists for 1 < p < inf
  const bool p_open = desc.p > Exponent(1) && !desc.p.is_infinite();
  switch (desc.family) {
    case Family::B: {
      SpaceDescriptor out = desc;
      out.family = Family::TB;
      out.r = desc.q;
      return {out, false};
    }
    case Family::F:
      return {desc, desc.b != Scalar(0)};
    case Family::BdiffZero:
    case Family::Lip:
      if (!p_open) return {desc, false};
      return {make_tf(desc.family == Family::Lip ? desc.s : Scalar(0), desc.p, Exponent(2),
                      desc.q, desc.b + desc.q.reciprocal(), desc.d),
              false};
    default:
      return {desc, false};
  }
}

namespace {

class Parser {
public:
  explicit Parser(std::string_view t) : t_(t) {}

  SpaceDescriptor run() {
    skip_ws();
    std::size_t start = i_;
    while (i_ < t_.size() && std::isalnum(static_cast<unsigned char>(t_[i_]))) ++i_;
    std::string_view tag = t_.substr(start, i_ - start);
    const FamilyKeys* fam = nullptr;
    for (const auto& k : kFamilies)
      if (k.tag == tag) fam = &k;
    if (!fam) throw DslError("unknown family '" + std::string(tag) + "'", start);
    SpaceDescriptor out;
    out.family = fam->family;
    expect('(');
    std::set<char> seen;
    skip_ws();
    if (peek() != ')') {
      while (true) {
        skip_ws();
        std::size_t kpos = i_;
        std::size_t kstart = i_;
        while (i_ < t_.size() && std::isalpha(static_cast<unsigned char>(t_[i_]))) ++i_;
        std::string_view key = t_.substr(kstart, i_ - kstart);
        if (key.size() != 1) throw DslError("unknown key '" + std::string(key) + "'", kpos);
        char k = key[0];
        bool allowed = fam->required.find(k) != std::string_view::npos || k == 'd';
        if (!allowed)
          throw DslError("key '" + std::string(key) + "' not valid for " +
                             std::string(fam->tag),
                         kpos);
        if (!seen.insert(k).second)
          throw DslError("duplicate key '" + std::string(key) + "'", kpos);
        expect('=');
        skip_ws();
        std::size_t vpos = i_;
        std::size_t vstart = i_;
        while (i_ < t_.size() && t_[i_] != ',' && t_[i_] != ')' &&
               !std::isspace(static_cast<unsigned char>(t_[i_])))
          ++i_;
        assign(out, k, t_.substr(vstart, i_ - vstart), vpos);
        skip_ws();
        if (peek() == ',') {
          ++i_;
          continue;
        }
        break;
      }
    }
    expect(')');
    skip_ws();
    if (i_ != t_.size()) throw DslError("trailing characters", i_);
    for (char k : fam->required)
      if (!seen.count(k))
        throw DslError(std::string("missing key '") + k + "'", t_.size());
    return out;
  }

private:
  void assign(SpaceDescriptor& out, char k, std::string_view v, std::size_t pos) {
    try {
      switch (k) {
        case 's': out.s = parse_scalar(v); break;
        case 'b': out.b = parse_scalar(v); break;
        case 'p': out.p = Exponent::parse(v); break;
        case 'q': out.q = Exponent::parse(v); break;
        case 'r': out.r = Exponent::parse(v); break;
        case 'u': out.u = Exponent::parse(v); break;
        case 'd': {
          Scalar x = parse_scalar(v);
          if (!x.is_integer() || x < Scalar(1) || x > Scalar(64))
            throw std::invalid_argument("d must be an integer in [1,64]");
          out.d = static_cast<int>(x.to_double());
          break;
        }
      }
    } catch (const std::invalid_argument& e) {
      throw DslError(std::string("bad value for '") + k + "': " + e.what(), pos);
    }
  }

  char peek() const { return i_ < t_.size() ? t_[i_] : '\0'; }
  void skip_ws() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) throw DslError(std::string("expected '") + c + "'", i_);
    ++i_;
  }

  std::string_view t_;
  std::size_t i_ = 0;
};

}  // namespace

SpaceDescriptor parse_descriptor_unchecked(std::string_view text) {
  return Parser(text).run();
}

SpaceDescriptor parse_descriptor(std::string_view text) {
  SpaceDescriptor out = parse_descriptor_unchecked(text);
  if (auto v = validate_descriptor(out); !v.empty()) throw ValidationError(v);
  return out;
}

std::string to_string(const SpaceDescriptor& desc) {
  const auto& fam = keys_of(desc.family);
  std::string out(fam.tag);
  out += '(';
  bool first = true;
  auto emit = [&](char k, const std::string& v) {
    if (!first) out += ',';
    first = false;
    out += k;
    out += '=';
    out += v;
  };
  for (char k : fam.required) {
    switch (k) {
      case 's': emit(k, desc.s.to_string()); break;
      case 'b': emit(k, desc.b.to_string()); break;
      case 'p': emit(k, desc.p.to_string()); break;
      case 'q': emit(k, desc.q.to_string()); break;
      case 'r': emit(k, desc.r ? desc.r->to_string() : "?"); break;
      case 'u': emit(k, desc.u ? desc.u->to_string() : "?"); break;
    }
  }
  emit('d', std::to_string(desc.d));
  out += ')';
  return out;
}

}  // namespace ts
