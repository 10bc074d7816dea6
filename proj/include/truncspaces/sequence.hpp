// Sparse wavelet-coefficient sequences, scalar sequences, dyadic blocks.
#pragma once

#include "truncspaces/xreal.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ts {

struct WaveletKey {
  int j = 0;
  std::uint32_t G = 1;  // bit i set means component i is M
  std::vector<std::int64_t> m;

  auto operator<=>(const WaveletKey&) const = default;
};

std::uint32_t all_m_mask(int d);

// Coefficient of an entry with stored value v is v * 2^{j*tilt}; the tilt
// lets extremal sequences carry coefficients far below double range.
class WaveletSequence {
public:
  explicit WaveletSequence(int d, double tilt = 0.0);

  int dim() const { return d_; }
  double tilt() const { return tilt_; }
  const std::map<WaveletKey, double>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  int max_level() const;  // -1 when empty

  void set(WaveletKey key, double v);  // v == 0 erases
  void add(const WaveletKey& key, double v);
  double stored(const WaveletKey& key) const;
  XReal magnitude(const WaveletKey& key, double v) const;  // |v| 2^{j tilt}

  WaveletSequence scaled(double c) const;
  // Re-expresses at another tilt; throws std::overflow_error if a value leaves double range.
  WaveletSequence retilted(double tilt) const;

  friend WaveletSequence operator+(const WaveletSequence& a, const WaveletSequence& b);
  bool operator==(const WaveletSequence&) const = default;

private:
  void check_key(const WaveletKey& key) const;
  int d_;
  double tilt_;
  std::map<WaveletKey, double> entries_;
};

WaveletSequence lift_sequence(const WaveletSequence& seq, double sigma);

WaveletSequence sequence_from_json(const nlohmann::json& j);
nlohmann::json to_json(const WaveletSequence& seq);

struct BlockIndex {
  int k = 0;
  std::int64_t first() const { return (std::int64_t{1} << k) - 1; }
  std::int64_t last() const { return (std::int64_t{1} << (k + 1)) - 2; }
  bool operator==(const BlockIndex&) const = default;
};

BlockIndex block_of(std::int64_t j);

// Non-negative sequence indexed from 1.
class ScalarSequence {
public:
  ScalarSequence() = default;
  static ScalarSequence finite(std::map<std::int64_t, double> values);
  static ScalarSequence from_vector(const std::vector<double>& values);  // index 1..n
  static ScalarSequence rule(std::function<double(std::int64_t)> f, std::int64_t horizon,
                             std::string name = "rule");

  double at(std::int64_t n) const;
  std::int64_t horizon() const;  // largest index that may be nonzero
  std::vector<double> values() const;  // indices 1..horizon
  bool is_zero() const;

private:
  std::map<std::int64_t, double> finite_;
  std::function<double(std::int64_t)> rule_;
  std::int64_t horizon_ = 0;
  std::string name_;
};

ScalarSequence rearrange(const ScalarSequence& a);

ScalarSequence scalar_sequence_from_json(const nlohmann::json& j);

}  // namespace ts
