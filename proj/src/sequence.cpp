#include "truncspaces/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ts {

std::uint32_t all_m_mask(int d) {
  if (d < 1 || d > 31) throw std::invalid_argument("dimension out of range");
  return (std::uint32_t{1} << d) - 1;
}

WaveletSequence::WaveletSequence(int d, double tilt) : d_(d), tilt_(tilt) {
  if (d < 1 || d > 31) throw std::invalid_argument("dimension must be in [1,31]");
  if (!std::isfinite(tilt)) throw std::invalid_argument("tilt must be finite");
}

void WaveletSequence::check_key(const WaveletKey& key) const {
  if (key.j < 0) throw std::invalid_argument("level j must be non-negative");
  if (static_cast<int>(key.m.size()) != d_)
    throw std::invalid_argument("position m must have d components");
  if (key.G > all_m_mask(d_)) throw std::invalid_argument("gender mask exceeds 2^d-1");
  if (key.j >= 1 && key.G == 0)
    throw std::invalid_argument("for j>=1 at least one component of G must be M");
}

int WaveletSequence::max_level() const {
  int out = -1;
  for (const auto& [k, v] : entries_) out = std::max(out, k.j);
  return out;
}

void WaveletSequence::set(WaveletKey key, double v) {
  check_key(key);
  if (!std::isfinite(v)) throw std::invalid_argument("coefficient must be finite");
  if (v == 0.0)
    entries_.erase(key);
  else
    entries_[std::move(key)] = v;
}

void WaveletSequence::add(const WaveletKey& key, double v) { set(key, stored(key) + v); }

double WaveletSequence::stored(const WaveletKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0.0 : it->second;
}

XReal WaveletSequence::magnitude(const WaveletKey& key, double v) const {
  XReal a(std::fabs(v));
  if (tilt_ == 0.0) return a;
  return a * XReal::exp2(key.j * tilt_);
}

WaveletSequence WaveletSequence::scaled(double c) const {
  WaveletSequence out(d_, tilt_);
  if (c == 0.0) return out;
  for (const auto& [k, v] : entries_) out.entries_[k] = v * c;
  return out;
}

WaveletSequence WaveletSequence::retilted(double tilt) const {
  WaveletSequence out(d_, tilt);
  for (const auto& [k, v] : entries_) {
    double w = (XReal(v) * XReal::exp2(k.j * (tilt_ - tilt))).to_double();
    if (!std::isfinite(w) || w == 0.0)
      throw std::overflow_error("coefficient leaves double range after retilting");
    out.entries_[k] = w;
  }
  return out;
}

WaveletSequence operator+(const WaveletSequence& a, const WaveletSequence& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("dimension mismatch");
  WaveletSequence out = a;
  const WaveletSequence& bb = b.tilt_ == a.tilt_ ? b : b.retilted(a.tilt_);
  for (const auto& [k, v] : bb.entries_) out.add(k, v);
  return out;
}

WaveletSequence lift_sequence(const WaveletSequence& seq, double sigma) {
  WaveletSequence out(seq.dim(), seq.tilt());
  for (const auto& [k, v] : seq.entries()) {
    double w = v * std::exp2(k.j * sigma);
    if (!std::isfinite(w) || w == 0.0)
      throw std::overflow_error("lifted coefficient leaves double range");
    out.set(k, w);
  }
  return out;
}

WaveletSequence sequence_from_json(const nlohmann::json& j) {
  try {
    WaveletSequence out(j.at("dim").get<int>(), j.value("tilt", 0.0));
    for (const auto& e : j.at("entries")) {
      WaveletKey key{e.at("j").get<int>(), e.at("G").get<std::uint32_t>(),
                     e.at("m").get<std::vector<std::int64_t>>()};
      if (out.stored(key) != 0.0)
        throw std::invalid_argument("duplicate key at j=" + std::to_string(key.j));
      out.set(std::move(key), e.at("v").get<double>());
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed sequence JSON: ") + e.what());
  }
}

nlohmann::json to_json(const WaveletSequence& seq) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [k, v] : seq.entries())
    entries.push_back({{"j", k.j}, {"G", k.G}, {"m", k.m}, {"v", v}});
  nlohmann::json out{{"dim", seq.dim()}, {"entries", entries}};
  if (seq.tilt() != 0.0) out["tilt"] = seq.tilt();
  return out;
}

BlockIndex block_of(std::int64_t j) {
  if (j < 0) throw std::invalid_argument("block_of: negative level");
  int k = 0;
  while (((std::int64_t{1} << (k + 1)) - 2) < j) ++k;
  return {k};
}

ScalarSequence ScalarSequence::finite(std::map<std::int64_t, double> values) {
  ScalarSequence out;
  for (const auto& [n, v] : values) {
    if (n < 1) throw std::invalid_argument("scalar sequence indices start at 1");
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("scalar sequence values must be finite and >= 0");
    if (v != 0.0) {
      out.finite_[n] = v;
      out.horizon_ = std::max(out.horizon_, n);
    }
  }
  return out;
}

ScalarSequence ScalarSequence::from_vector(const std::vector<double>& values) {
  std::map<std::int64_t, double> m;
  for (std::size_t i = 0; i < values.size(); ++i) m[static_cast<std::int64_t>(i) + 1] = values[i];
  return finite(std::move(m));
}

ScalarSequence ScalarSequence::rule(std::function<double(std::int64_t)> f,
                                    std::int64_t horizon, std::string name) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  ScalarSequence out;
  out.rule_ = std::move(f);
  out.horizon_ = horizon;
  out.name_ = std::move(name);
  return out;
}

double ScalarSequence::at(std::int64_t n) const {
  if (n < 1 || n > horizon_) return 0.0;
  if (rule_) {
    double v = rule_(n);
    if (!(v >= 0.0)) throw std::domain_error("rule produced a negative value");
    return v;
  }
  auto it = finite_.find(n);
  return it == finite_.end() ? 0.0 : it->second;
}

std::int64_t ScalarSequence::horizon() const { return horizon_; }

std::vector<double> ScalarSequence::values() const {
  std::vector<double> out(static_cast<std::size_t>(horizon_), 0.0);
  if (rule_) {
    for (std::int64_t n = 1; n <= horizon_; ++n) out[n - 1] = at(n);
  } else {
    for (const auto& [n, v] : finite_) out[n - 1] = v;
  }
  return out;
}

bool ScalarSequence::is_zero() const {
  if (!rule_) return finite_.empty();
  for (std::int64_t n = 1; n <= horizon_; ++n)
    if (at(n) != 0.0) return false;
  return true;
}

ScalarSequence rearrange(const ScalarSequence& a) {
  std::vector<double> v;
  if (a.horizon() > 0) v = a.values();
  std::erase(v, 0.0);
  std::sort(v.begin(), v.end(), std::greater<>());
  return ScalarSequence::from_vector(v);
}

ScalarSequence scalar_sequence_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("values")) {
      std::map<std::int64_t, double> m;
      for (const auto& [k, v] : j.at("values").items()) m[std::stoll(k)] = v.get<double>();
      return ScalarSequence::finite(std::move(m));
    }
    if (j.at("rule").get<std::string>() != "power")
      throw std::invalid_argument("unknown rule '" + j.at("rule").get<std::string>() + "'");
    double alpha = j.at("alpha").get<double>();
    double beta = j.value("beta", 0.0);
    auto n = j.at("N").get<std::int64_t>();
    return ScalarSequence::rule(
        [alpha, beta](std::int64_t k) {
          double x = static_cast<double>(k);
          return std::pow(x, -alpha) * std::pow(std::log(x + 1.0), -beta);
        },
        n, "power");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed scalar sequence JSON: ") + e.what());
  }
}

}  // namespace ts
