#include "truncspaces/verify.hpp"

#include "truncspaces/interpolation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

namespace ts {

namespace {

int thread_count(int requested) {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Runs f(i) for i in [0, n) on a small pool; results go wherever f writes them.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
  const int t = std::min<std::size_t>(thread_count(threads), std::max<std::size_t>(n, 1));
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (int k = 0; k < t; ++k)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n && !failed;) {
          try {
            f(i);
          } catch (...) {
            if (!failed.exchange(true)) err = std::current_exception();
          }
        }
      });
  }
  if (err) std::rethrow_exception(err);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

bool bad(double x) { return std::isnan(x); }

TraceVerdict classify_growth(const std::vector<double>& r, const Thresholds& th) {
  if (r.size() < 2 || std::any_of(r.begin(), r.end(), bad) || r.front() <= 0)
    return TraceVerdict::Inconclusive;
  const double g = r.back() / r.front();
  if (g >= th.growth) return TraceVerdict::Diverging;
  if (g <= th.bounded) return TraceVerdict::Bounded;
  return TraceVerdict::Inconclusive;
}

TraceVerdict classify_confirm(const std::vector<double>& r, const Thresholds& th) {
  if (r.size() < 3 || std::any_of(r.begin(), r.end(), bad)) return TraceVerdict::Inconclusive;
  const double ref = r[r.size() - 3];
  if (std::isfinite(r.back()) && r.back() <= th.bounded * ref) return TraceVerdict::Bounded;
  if (r.front() > 0 && r.back() / r.front() >= th.growth) return TraceVerdict::Diverging;
  return TraceVerdict::Inconclusive;
}

SpaceDescriptor canonical_form(const SpaceDescriptor& desc) {
  return canonicalize_descriptor(desc).descriptor;
}

NormValue proxy_of(const Extremal& x, Predicate p) {
  return std::visit(
      [&](const auto& l) { return p == Predicate::L1loc ? l1loc_proxy(l) : continuity_proxy(l); },
      x);
}

std::int64_t witness_length(const WitnessSpec& w, std::int64_t size) {
  if (!w.logarithmic_length()) return size;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::log2(static_cast<double>(size))));
}

void check_sizes(std::span<const std::int64_t> sizes) {
  if (sizes.empty()) throw std::invalid_argument("size list is empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw std::invalid_argument("sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw std::invalid_argument("sizes must be strictly increasing");
  }
}

// sup over trials per size, then running sup up the ladder
template <class Ratio>
RatioTrace confirm_ladder(const ConfirmOptions& opt, Ratio&& ratio) {
  if (opt.trials < 1) throw std::invalid_argument("confirmation needs at least one trial");
  RatioTrace out;
  out.sizes = doubling_ladder(opt.max_size);
  if (out.sizes.size() < 3)
    throw std::invalid_argument("confirmation needs max_size >= 64");
  const std::size_t n = out.sizes.size() * static_cast<std::size_t>(opt.trials);
  std::vector<double> r(n);
  parallel_for(n, opt.threads, [&](std::size_t i) {
    const std::size_t si = i / static_cast<std::size_t>(opt.trials);
    const std::size_t t = i % static_cast<std::size_t>(opt.trials);
    r[i] = ratio(out.sizes[si], mix(opt.seed, static_cast<std::uint64_t>(out.sizes[si]), t));
  });
  double sup = 0.0;
  for (std::size_t si = 0; si < out.sizes.size(); ++si) {
    for (int t = 0; t < opt.trials; ++t) {
      double x = r[si * static_cast<std::size_t>(opt.trials) + static_cast<std::size_t>(t)];
      sup = bad(x) || bad(sup) ? NAN : std::max(sup, x);
    }
    out.ratios.push_back(sup);
  }
  out.verdict = classify_confirm(out.ratios, opt.thresholds);
  return out;
}

}  // namespace

std::string_view trace_verdict_name(TraceVerdict v) {
  switch (v) {
    case TraceVerdict::Bounded: return "Bounded";
    case TraceVerdict::Diverging: return "Diverging";
    case TraceVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<std::int64_t> doubling_ladder(std::int64_t max_size) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 16; n <= max_size; n *= 2) out.push_back(n);
  return out;
}

std::vector<std::int64_t> default_budget_sizes() { return doubling_ladder(4096); }

WaveletSequence random_sparse_sequence(int d, std::int64_t size, std::uint64_t seed) {
  if (size < 1) throw std::invalid_argument("size must be positive");
  std::mt19937_64 rng(seed);
  const int top = static_cast<int>(std::floor(std::log2(static_cast<double>(size))));
  std::uniform_int_distribution<int> count(1, 16), level(0, top);
  std::uniform_real_distribution<double> expo(-20.0, 20.0);
  WaveletSequence out(d);
  const int n = count(rng);
  while (static_cast<int>(out.size()) < n) {
    const int j = level(rng);
    const auto box = std::min<std::int64_t>(std::int64_t{1} << std::min(j, 62), size);
    std::uniform_int_distribution<std::int64_t> pos(0, box - 1);
    std::uniform_int_distribution<std::uint32_t> gender(j == 0 ? 0u : 1u, all_m_mask(d));
    WaveletKey key{j, gender(rng), {}};
    for (int i = 0; i < d; ++i) key.m.push_back(pos(rng));
    out.set(std::move(key), std::exp2(expo(rng)));
  }
  return out;
}

RatioTrace confirm_embedding(const SpaceDescriptor& src, const SpaceDescriptor& dst,
                             const ConfirmOptions& opt) {
  const auto v = embeds(src, dst);
  if (v.status != VerdictStatus::Holds)
    throw std::invalid_argument("confirm_embedding requires a Holds verdict, got " +
                                std::string(status_name(v.status)) + " (" + v.condition + ")");
  return confirm_ladder(opt, [&](std::int64_t size, std::uint64_t seed) {
    auto l = random_sparse_sequence(src.d, size, seed);
    return norm_ratio(space_norm(dst, l), space_norm(src, l));
  });
}

RatioTrace run_witness(const EmbeddingVerdict& v, const SpaceDescriptor& src,
                       const SpaceDescriptor& dst, std::span<const std::int64_t> sizes,
                       const Thresholds& th) {
  if (v.status != VerdictStatus::Fails)
    throw std::invalid_argument("falsification requires a Fails verdict");
  if (!v.witness) throw std::invalid_argument("Fails verdict carries no witness");
  check_sizes(sizes);
  const auto a = canonical_form(src), c = canonical_form(dst);
  RatioTrace out;
  out.witness = v.witness->id();
  for (auto size : sizes) {
    const auto x = gen_extremal(*v.witness, witness_length(*v.witness, size));
    out.sizes.push_back(size);
    out.ratios.push_back(norm_ratio(space_norm(c, x), space_norm(a, x)));
  }
  out.verdict = classify_growth(out.ratios, th);
  return out;
}

RatioTrace falsify_embedding(const SpaceDescriptor& src, const SpaceDescriptor& dst,
                             std::span<const std::int64_t> sizes, const Thresholds& th) {
  return run_witness(embeds(src, dst), src, dst, sizes, th);
}

std::string_view predicate_name(Predicate p) {
  return p == Predicate::L1loc ? "L1loc" : "C";
}

EmbeddingVerdict predicate_verdict(const SpaceDescriptor& desc, Predicate p) {
  return p == Predicate::L1loc ? embeds_L1loc(desc) : embeds_C(desc);
}

RatioTrace confirm_predicate(const SpaceDescriptor& desc, Predicate p,
                             const ConfirmOptions& opt) {
  const auto v = predicate_verdict(desc, p);
  if (v.status != VerdictStatus::Holds)
    throw std::invalid_argument("confirm_predicate requires a Holds verdict");
  return confirm_ladder(opt, [&](std::int64_t size, std::uint64_t seed) {
    auto l = random_sparse_sequence(desc.d, size, seed);
    const NormValue proxy = p == Predicate::L1loc ? l1loc_proxy(l) : continuity_proxy(l);
    return norm_ratio(proxy, space_norm(desc, l));
  });
}

RatioTrace run_witness(const EmbeddingVerdict& v, const SpaceDescriptor& desc, Predicate p,
                       std::span<const std::int64_t> sizes, const Thresholds& th) {
  if (v.status != VerdictStatus::Fails)
    throw std::invalid_argument("falsification requires a Fails verdict");
  if (!v.witness) throw std::invalid_argument("Fails verdict carries no witness");
  check_sizes(sizes);
  const auto a = canonical_form(desc);
  RatioTrace out;
  out.witness = v.witness->id();
  for (auto size : sizes) {
    const auto x = gen_extremal(*v.witness, witness_length(*v.witness, size));
    out.sizes.push_back(size);
    out.ratios.push_back(norm_ratio(proxy_of(x, p), space_norm(a, x)));
  }
  out.verdict = classify_growth(out.ratios, th);
  return out;
}

RatioTrace falsify_predicate(const SpaceDescriptor& desc, Predicate p,
                             std::span<const std::int64_t> sizes, const Thresholds& th) {
  return run_witness(predicate_verdict(desc, p), desc, p, sizes, th);
}

std::vector<BBMPoint> bbm_limit_check(const WaveletSequence& l, double s, const Exponent& p,
                                      const Exponent& q, const Exponent& r,
                                      std::span<const double> b_schedule) {
  if (r.is_infinite()) throw std::invalid_argument("BBM check requires r < inf");
  if (l.empty()) throw std::invalid_argument("BBM check requires a nonzero sequence");
  for (std::size_t i = 0; i < b_schedule.size(); ++i) {
    if (!(b_schedule[i] < 0)) throw std::invalid_argument("BBM schedule must be negative");
    if (i > 0 && !(b_schedule[i] > b_schedule[i - 1]))
      throw std::invalid_argument("BBM schedule must increase towards 0");
  }
  const double rd = r.to_double();
  const NormValue classical = besov_seq_norm(l, s, p, q, 0.0);
  std::vector<BBMPoint> out;
  for (double b : b_schedule) {
    const NormValue star = bstar_besov_seq_norm(l, s, p, q, r, b);
    const double scale = std::log2(-std::expm1(b * rd * std::log(2.0))) / rd;
    const double normalized = std::exp2(star.log2_value + scale);
    out.push_back({b, normalized, std::abs(normalized - classical.value)});
  }
  return out;
}

RatioTrace interp_equiv_check(const WaveletSequence& l, double s, double s0,
                              const Exponent& p, const Exponent& q, const Exponent& r,
                              double xi, std::span<const std::int64_t> sizes,
                              const Thresholds& th) {
  check_sizes(sizes);
  if (l.tilt() != 0.0) throw std::invalid_argument("interpolation check needs tilt 0");
  int theta;
  if (xi > 0 && s0 > s)
    theta = 0;
  else if (xi < 0 && s0 < s)
    theta = 1;
  else
    throw std::invalid_argument("interpolation check needs xi > 0, s0 > s or xi < 0, s0 < s");
  const double b = xi - r.reciprocal().to_double();
  const double dp = l.dim() * p.reciprocal().to_double();
  const WeightedLqPair pair = theta == 0 ? WeightedLqPair{s - dp, s0 - dp, q}
                                         : WeightedLqPair{s0 - dp, s - dp, q};
  RatioTrace out;
  for (auto size : sizes) {
    WaveletSequence prefix(l.dim());
    for (const auto& [key, v] : l.entries()) {
      if (static_cast<std::int64_t>(prefix.size()) >= size) break;
      prefix.set(key, v);
    }
    if (prefix.empty()) throw std::invalid_argument("interpolation check needs a nonzero sequence");
    auto w = level_profile_of(prefix, p);
    auto interp = limiting_interp_norm(w, theta, b, r, pair);
    out.sizes.push_back(size);
    out.ratios.push_back(norm_ratio(interp.norm, trunc_besov_seq_norm(prefix, s, p, q, r, xi)));
  }
  const auto [lo, hi] = std::minmax_element(out.ratios.begin(), out.ratios.end());
  if (std::any_of(out.ratios.begin(), out.ratios.end(), bad) || !(*lo > 0))
    out.verdict = TraceVerdict::Inconclusive;
  else if (*hi / *lo <= th.bounded)
    out.verdict = TraceVerdict::Bounded;
  else
    out.verdict = classify_growth(out.ratios, th);
  return out;
}

TrivialityTrace triviality_check(const WaveletSequence& l, double s, const Exponent& p,
                                 const Exponent& q, const Exponent& r, int j_max) {
  if (l.empty()) throw std::invalid_argument("triviality check requires a nonzero sequence");
  TrivialityTrace out;
  out.partial_sums = triviality_partial_sums(l, s, p, q, r, j_max);
  while (std::exp2(out.onset) < l.max_level()) ++out.onset;
  out.min_growth = INFINITY;
  for (int J = std::max(out.onset, 1); 2 * J <= j_max; ++J)
    out.min_growth = std::min(out.min_growth, out.partial_sums[2 * J] / out.partial_sums[J]);
  if (std::isinf(out.min_growth))
    throw std::invalid_argument("J_max too small to observe growth past the support");
  out.diverging = out.min_growth >= 1.5;
  return out;
}

std::vector<SpaceDescriptor> GridBlock::descriptors() const {
  auto expo = [](const Scalar& inv) {
    return inv == Scalar(0) ? Exponent::infinity() : Exponent(Scalar(1) / inv);
  };
  std::vector<SpaceDescriptor> out;
  for (Family f : {Family::TB, Family::TF})
    for (const auto& s0 : s)
      for (const auto& ip : inv_p)
        for (const auto& iq : inv_q)
          for (const auto& ir : inv_r)
            for (const auto& b0 : b) {
              SpaceDescriptor x;
              x.family = f;
              x.s = s0;
              x.p = expo(ip);
              x.q = expo(iq);
              x.r = expo(ir);
              x.b = b0;
              x.d = d;
              if (validate_descriptor(x).empty()) out.push_back(x);
            }
  return out;
}

AuditGrid AuditGrid::standard() {
  const Scalar half = Scalar::fraction(1, 2);
  const Scalar zero(0), one(1), two(2);
  AuditGrid g;
  // 1/r gaps of 1 keep the logarithmic r-gap witnesses above the growth threshold
  g.pair_blocks.push_back({1, {zero, one}, {zero, half, one, two}, {zero, half, one},
                           {zero, one}, {-half, half}});
  // equal-gap pairs with s1 < s0 and p0 < p1, b + 1/q balances for the mixed theorems
  g.pair_blocks.push_back({1, {half, one}, {zero, half}, {zero, half, one}, {zero, one},
                           {-half, half, one}});
  g.predicate_blocks.push_back({1, {zero, half, one, two}, {zero, half, one, two},
                                {zero, half, one, two}, {zero, half, one},
                                {-half, half, one, Scalar::fraction(3, 2)}});
  g.predicate_blocks.push_back({2, {zero, one, two}, {zero, half, one},
                                {zero, half, one}, {zero, one}, {-half, half, one}});
  return g;
}

namespace {

struct AuditItem {
  std::optional<AuditFinding> finding;  // set on contradiction
  std::string condition;
  int status = -1;  // VerdictStatus, or -1 when unsupported
};

template <class Verdict, class Confirm, class Falsify>
AuditItem audit_one(const std::string& what, Verdict&& verdict, Confirm&& confirm,
                    Falsify&& falsify) {
  AuditItem item;
  EmbeddingVerdict v;
  try {
    v = verdict();
  } catch (const UnsupportedPair&) {
    return item;
  }
  item.condition = v.condition;
  item.status = static_cast<int>(v.status);
  RatioTrace t;
  TraceVerdict expect;
  if (v.status == VerdictStatus::Holds) {
    t = confirm();
    expect = TraceVerdict::Bounded;
  } else if (v.status == VerdictStatus::Fails) {
    t = falsify(v);
    expect = TraceVerdict::Diverging;
  } else {
    return item;
  }
  if (t.verdict != expect) item.finding = AuditFinding{what, v.condition, v.status, t};
  return item;
}

}  // namespace

AuditReport run_grid_audit(const AuditGrid& grid, const ConfirmOptions& confirm,
                           std::span<const std::int64_t> budget_sizes) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<SpaceDescriptor, SpaceDescriptor>> pairs;
  for (const auto& blk : grid.pair_blocks) {
    const auto desc = blk.descriptors();
    for (const auto& a : desc)
      for (const auto& c : desc) pairs.emplace_back(a, c);
  }
  std::vector<SpaceDescriptor> singles;
  for (const auto& blk : grid.predicate_blocks)
    for (auto& x : blk.descriptors()) singles.push_back(std::move(x));
  const std::size_t n_pairs = pairs.size();
  const std::size_t total = n_pairs + 2 * singles.size();
  ConfirmOptions inner = confirm;
  inner.threads = 1;
  std::vector<AuditItem> items(total);
  parallel_for(total, confirm.threads, [&](std::size_t i) {
    if (i < n_pairs) {
      const auto& [a, c] = pairs[i];
      items[i] = audit_one(
          to_string(a) + " -> " + to_string(c), [&] { return embeds(a, c); },
          [&] { return confirm_embedding(a, c, inner); },
          [&](const EmbeddingVerdict& v) {
            return run_witness(v, a, c, budget_sizes, confirm.thresholds);
          });
      return;
    }
    const std::size_t k = i - n_pairs;
    const auto& a = singles[k / 2];
    const Predicate p = k % 2 == 0 ? Predicate::L1loc : Predicate::Continuity;
    items[i] = audit_one(
        to_string(a) + " in " + std::string(predicate_name(p)),
        [&] { return predicate_verdict(a, p); }, [&] { return confirm_predicate(a, p, inner); },
        [&](const EmbeddingVerdict& v) {
          return run_witness(v, a, p, budget_sizes, confirm.thresholds);
        });
  });

  AuditReport rep;
  rep.pairs = n_pairs;
  rep.predicates = 2 * singles.size();
  std::map<std::string, std::size_t> conds;
  for (auto& item : items) {
    switch (item.status) {
      case -1: ++rep.unsupported; continue;
      case static_cast<int>(VerdictStatus::Holds): ++rep.holds; break;
      case static_cast<int>(VerdictStatus::Fails): ++rep.fails; break;
      default: ++rep.unknown; break;
    }
    ++conds[item.condition];
    if (item.finding) rep.contradictions.push_back(std::move(*item.finding));
  }
  rep.conditions.assign(conds.begin(), conds.end());
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace ts
