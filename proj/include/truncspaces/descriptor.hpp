// Space descriptors: the parameter algebra of truncated and classical
// smoothness spaces, plus the FAM(key=value,...) text form.
#pragma once

#include "truncspaces/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ts {

enum class Family {
  TB,        // T^b_r B^s_{p,q}
  TF,        // T^b_r F^s_{p,q}
  TstarB,    // T^*_r B^s_{p,q}
  TstarF,    // T^*_r F^s_{p,q}
  B,         // B^{s,b}_{p,q}
  F,         // F^{s,b}_{p,q}
  BdiffZero, // B^{0,b}_{p,q} (difference-type, smoothness zero)
  Lip,       // Lip^{s,b}_{p,q}
  TLorentz,  // T^b_r l_{u,q}
  LorentzZygmund,  // l_{u,q}(log l)_b
};

std::string_view family_tag(Family f);  // DSL spelling, e.g. "TSB"

struct SpaceDescriptor {
  Family family = Family::TB;
  Scalar s;
  Exponent p{1};
  Exponent q{1};
  std::optional<Exponent> r;
  Scalar b;
  int d = 1;
  std::optional<Exponent> u;

  bool operator==(const SpaceDescriptor&) const = default;
};

struct Violation {
  std::string constraint;
  std::string citation;
};

std::vector<Violation> validate_descriptor(const SpaceDescriptor& desc);

class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(std::vector<Violation> v);
  const std::vector<Violation>& violations() const { return v_; }

private:
  std::vector<Violation> v_;
};

class OutOfPaperRange : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Throws OutOfPaperRange when the duality statements do not cover desc.
SpaceDescriptor dual_descriptor(const SpaceDescriptor& desc);

SpaceDescriptor lift_descriptor(const SpaceDescriptor& desc, const Scalar& sigma);

struct CanonicalForm {
  SpaceDescriptor descriptor;
  // Set for F^{s,b}_{p,q} with b != 0, whose truncated form is the inner
  // truncation that has no sequence space here.
  bool needs_inner_truncation = false;
};

CanonicalForm canonicalize_descriptor(const SpaceDescriptor& desc);

class DslError : public std::invalid_argument {
public:
  DslError(const std::string& what, std::size_t pos);
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

// Parses and validates. Throws DslError on syntax, ValidationError on range.
SpaceDescriptor parse_descriptor(std::string_view text);
SpaceDescriptor parse_descriptor_unchecked(std::string_view text);
std::string to_string(const SpaceDescriptor& desc);

}  // namespace ts
