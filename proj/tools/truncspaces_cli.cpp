// truncspaces command line front end
#include "truncspaces/descriptor.hpp"
#include "truncspaces/embeddings.hpp"
#include "truncspaces/gm.hpp"
#include "truncspaces/norms.hpp"
#include "truncspaces/sequence.hpp"
#include "truncspaces/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

using nlohmann::json;
using namespace ts;

namespace {

constexpr int kExitExpectation = 1;
constexpr int kExitUsage = 2;

constexpr const char* kHeuristicNote =
    "Bounded/Diverging are threshold heuristics; no equivalence constant is known";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

WaveletSequence load_sequence(const std::string& path) {
  auto j = read_json_file(path);
  try {
    return sequence_from_json(j);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

ScalarSequence load_scalar_sequence(const std::string& path) {
  auto j = read_json_file(path);
  try {
    return scalar_sequence_from_json(j);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

double parse_real(const std::string& text) { return parse_scalar(text).to_double(); }

std::optional<Predicate> as_predicate(const std::string& text) {
  if (text == "L1loc") return Predicate::L1loc;
  if (text == "C") return Predicate::Continuity;
  return std::nullopt;
}

json to_json(const NormValue& v) {
  return {{"value", v.value}, {"log2_value", v.log2_value}, {"exact", v.exact}};
}

json to_json(const WitnessSpec& w) {
  json params = json::object();
  for (const auto& [k, v] : w.params) params[k] = v;
  return {{"kind", w.id()}, {"params", params}};
}

json to_json(const EmbeddingVerdict& v) {
  return {{"status", status_name(v.status)},
          {"condition", v.condition},
          {"witness", v.witness ? to_json(*v.witness) : json(nullptr)},
          {"citation", v.citation}};
}

json to_json(const RatioTrace& t) {
  return {{"sizes", t.sizes},
          {"ratios", t.ratios},
          {"verdict", trace_verdict_name(t.verdict)},
          {"witness", t.witness.empty() ? json(nullptr) : json(t.witness)},
          {"note", kHeuristicNote}};
}

std::string text_of(const NormValue& v) {
  std::ostringstream os;
  os.precision(17);
  os << v.value;
  if (!std::isfinite(v.value) && std::isfinite(v.log2_value)) os << " (2^" << v.log2_value << ")";
  if (v.exact) os << " exact";
  return os.str();
}

std::string text_of(const EmbeddingVerdict& v) {
  std::string out = std::string(status_name(v.status)) + " " + v.condition;
  if (v.witness) out += " witness=" + v.witness->id();
  if (!v.citation.empty()) out += " [" + v.citation + "]";
  return out;
}

std::string text_of(const RatioTrace& t) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < t.sizes.size(); ++i) os << t.sizes[i] << "\t" << t.ratios[i] << "\n";
  os << trace_verdict_name(t.verdict);
  if (!t.witness.empty()) os << " witness=" << t.witness;
  os << "\nnote: " << kHeuristicNote;
  return os.str();
}

void emit(bool as_json, const json& j, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TRUNC_SPACES_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("TRUNC_SPACES_SEED is not an integer: ") + env);
    }
  }
  return 1;
}

std::vector<std::int64_t> ladder(std::int64_t max_size) {
  if (max_size < 16) throw UsageError("--max-size must be >= 16");
  return doubling_ladder(max_size);
}

int trace_exit(const RatioTrace& t, bool expect_holds) {
  return expect_holds && t.verdict == TraceVerdict::Diverging ? kExitExpectation : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Besov/Triebel-Lizorkin sequence spaces: norms, embeddings, checks"};
  app.require_subcommand(1, 1);

  bool as_json = false;
  std::string expect;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--expect", expect, "exit 1 on Fails/Diverging when set to holds")
      ->check(CLI::IsMember({"holds"}));

  std::string space, from, to, seq_path, sigma_text = "0";
  std::string s_text = "0", s0_text = "1", p_text = "2", q_text = "2", r_text = "2",
              b_text = "0", xi_text = "1";
  std::int64_t max_size = 4096;
  int trials = 16;
  std::optional<std::uint64_t> seed;
  std::vector<double> schedule;
  std::int64_t horizon = 1024;
  std::string gm_kind = "besov";

  auto* norm = app.add_subcommand("norm", "norm of a sequence in a space");
  norm->add_option("--space", space, "descriptor")->required();
  norm->add_option("--seq", seq_path, "sequence JSON")->required();

  auto* embed = app.add_subcommand("embed", "embedding verdict");
  embed->add_option("--from", from, "source descriptor")->required();
  embed->add_option("--to", to, "target descriptor, L1loc or C")->required();

  auto* dual = app.add_subcommand("dual", "dual space");
  dual->add_option("--space", space, "descriptor")->required();

  auto* lift = app.add_subcommand("lift", "lift by sigma");
  lift->add_option("--space", space, "descriptor")->required();
  lift->add_option("--sigma", sigma_text, "smoothness shift")->required();
  lift->add_option("--seq", seq_path, "also lift this sequence");

  auto* canon = app.add_subcommand("canon", "canonical form");
  canon->add_option("--space", space, "descriptor")->required();

  auto* falsify = app.add_subcommand("falsify", "run the witness of a Fails verdict");
  falsify->add_option("--from", from, "source descriptor")->required();
  falsify->add_option("--to", to, "target descriptor, L1loc or C")->required();
  falsify->add_option("--max-size", max_size, "largest size");

  auto* confirm = app.add_subcommand("confirm", "random search for a Holds verdict");
  confirm->add_option("--from", from, "source descriptor")->required();
  confirm->add_option("--to", to, "target descriptor, L1loc or C")->required();
  confirm->add_option("--max-size", max_size, "largest size");
  confirm->add_option("--trials", trials, "sequences per size")->check(CLI::PositiveNumber);
  confirm->add_option("--seed", seed, "seed (default TRUNC_SPACES_SEED or 1)");

  auto* bbm = app.add_subcommand("bbm", "b -> 0- limit of the starred norm");
  bbm->add_option("--seq", seq_path, "sequence JSON")->required();
  bbm->add_option("--s", s_text);
  bbm->add_option("--p", p_text);
  bbm->add_option("--q", q_text);
  bbm->add_option("--r", r_text);
  bbm->add_option("--b", schedule, "b schedule (default -2^-k, k=1..10)");

  auto* interp = app.add_subcommand("interp-check", "limiting interpolation vs truncated norm");
  interp->add_option("--seq", seq_path, "sequence JSON")->required();
  interp->add_option("--s", s_text);
  interp->add_option("--s0", s0_text);
  interp->add_option("--p", p_text);
  interp->add_option("--q", q_text);
  interp->add_option("--r", r_text);
  interp->add_option("--xi", xi_text);
  interp->add_option("--max-size", max_size, "largest prefix");

  auto* gm = app.add_subcommand("gm", "general monotone sequences");
  gm->require_subcommand(1, 1);
  auto* gm_check_cmd = gm->add_subcommand("check", "GM constant within a horizon");
  gm_check_cmd->add_option("--seq", seq_path, "scalar sequence JSON")->required();
  gm_check_cmd->add_option("--N", horizon, "horizon")->check(CLI::PositiveNumber);
  auto* gm_norm_cmd = gm->add_subcommand("norm", "periodic GM norm from a_{2^nu}");
  gm_norm_cmd->add_option("--seq", seq_path, "scalar sequence JSON")->required();
  gm_norm_cmd->add_option("--kind", gm_kind)->check(CLI::IsMember({"besov", "lip"}));
  gm_norm_cmd->add_option("--s", s_text);
  gm_norm_cmd->add_option("--p", p_text);
  gm_norm_cmd->add_option("--q", q_text);
  gm_norm_cmd->add_option("--r", r_text);
  gm_norm_cmd->add_option("--b", b_text);
  gm_norm_cmd->add_option("--N", horizon, "largest index 2^nu")->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "grid audit of every verdict");
  report->add_option("--trials", trials, "sequences per size")->check(CLI::PositiveNumber);
  report->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  const bool expect_holds = expect == "holds";

  try {
    if (*norm) {
      auto d = parse_descriptor(space);
      auto v = space_norm(d, load_sequence(seq_path));
      json j = to_json(v);
      j["space"] = to_string(d);
      emit(as_json, j, text_of(v));
      return 0;
    }
    if (*embed) {
      auto src = parse_descriptor(from);
      auto pred = as_predicate(to);
      auto v = pred ? predicate_verdict(src, *pred) : embeds(src, parse_descriptor(to));
      emit(as_json, to_json(v), text_of(v));
      return expect_holds && v.status == VerdictStatus::Fails ? kExitExpectation : 0;
    }
    if (*dual) {
      auto d = dual_descriptor(parse_descriptor(space));
      emit(as_json, {{"space", to_string(d)}}, to_string(d));
      return 0;
    }
    if (*lift) {
      auto sigma = parse_scalar(sigma_text);
      auto d = lift_descriptor(parse_descriptor(space), sigma);
      json j = {{"space", to_string(d)}};
      std::string text = to_string(d);
      if (!seq_path.empty()) {
        auto lifted = to_json(lift_sequence(load_sequence(seq_path), sigma.to_double()));
        j["sequence"] = lifted;
        text += "\n" + lifted.dump();
      }
      emit(as_json, j, text);
      return 0;
    }
    if (*canon) {
      auto c = canonicalize_descriptor(parse_descriptor(space));
      json j = {{"space", to_string(c.descriptor)},
                {"needs_inner_truncation", c.needs_inner_truncation}};
      std::string text = to_string(c.descriptor);
      if (c.needs_inner_truncation) text += " (inner truncation)";
      emit(as_json, j, text);
      return 0;
    }
    if (*falsify || *confirm) {
      auto src = parse_descriptor(from);
      auto pred = as_predicate(to);
      std::optional<SpaceDescriptor> dst;
      if (!pred) dst = parse_descriptor(to);
      RatioTrace t;
      if (*falsify) {
        auto sizes = ladder(max_size);
        t = pred ? falsify_predicate(src, *pred, sizes) : falsify_embedding(src, *dst, sizes);
      } else {
        ConfirmOptions opt;
        opt.trials = trials;
        opt.max_size = max_size;
        opt.seed = seed.value_or(default_seed());
        ladder(max_size);
        t = pred ? confirm_predicate(src, *pred, opt) : confirm_embedding(src, *dst, opt);
      }
      emit(as_json, to_json(t), text_of(t));
      return trace_exit(t, expect_holds);
    }
    if (*bbm) {
      if (schedule.empty())
        for (int k = 1; k <= 10; ++k) schedule.push_back(-std::exp2(-k));
      auto l = load_sequence(seq_path);
      const double s = parse_real(s_text);
      const auto p = Exponent::parse(p_text), q = Exponent::parse(q_text),
                 r = Exponent::parse(r_text);
      auto pts = bbm_limit_check(l, s, p, q, r, schedule);
      auto classical = besov_seq_norm(l, s, p, q, 0.0);
      json arr = json::array();
      std::ostringstream os;
      os.precision(12);
      os << "classical " << classical.value << "\n";
      for (const auto& pt : pts) {
        arr.push_back({{"b", pt.b}, {"normalized", pt.normalized}, {"deviation", pt.deviation}});
        os << pt.b << "\t" << pt.normalized << "\t" << pt.deviation << "\n";
      }
      emit(as_json, {{"classical", classical.value}, {"points", arr}}, os.str());
      return 0;
    }
    if (*interp) {
      auto t = interp_equiv_check(load_sequence(seq_path), parse_real(s_text),
                                  parse_real(s0_text), Exponent::parse(p_text),
                                  Exponent::parse(q_text), Exponent::parse(r_text),
                                  parse_real(xi_text), ladder(max_size));
      emit(as_json, to_json(t), text_of(t));
      return trace_exit(t, expect_holds);
    }
    if (*gm_check_cmd) {
      auto rep = gm_check(load_scalar_sequence(seq_path), horizon);
      json j = {{"is_gm", rep.is_gm},
                {"constant", rep.constant},
                {"violating_n", rep.violating_n ? json(*rep.violating_n) : json(nullptr)},
                {"horizon", rep.horizon},
                {"note", "within horizon n <= " + std::to_string(rep.horizon)}};
      std::ostringstream os;
      os.precision(12);
      os << (rep.is_gm ? "GM" : "not GM") << " within horizon " << rep.horizon
         << " constant " << rep.constant;
      if (rep.violating_n) os << " violating n=" << *rep.violating_n;
      emit(as_json, j, os.str());
      return 0;
    }
    if (*gm_norm_cmd) {
      auto a = load_scalar_sequence(seq_path);
      std::vector<double> samples;
      for (std::int64_t n = 1; n <= horizon; n *= 2) samples.push_back(a.at(n));
      const double s = parse_real(s_text), b = parse_real(b_text);
      const auto p = Exponent::parse(p_text), q = Exponent::parse(q_text);
      auto v = gm_kind == "lip"
                   ? gm_lip_norm_periodic(samples, s, p, q, b)
                   : gm_trunc_besov_norm_periodic(samples, s, p, q, Exponent::parse(r_text), b);
      emit(as_json, to_json(v), text_of(v));
      return 0;
    }
    if (*report) {
      ConfirmOptions opt;
      opt.trials = trials;
      opt.seed = seed.value_or(default_seed());
      auto rep = run_grid_audit(AuditGrid::standard(), opt, default_budget_sizes());
      json conds = json::object();
      for (const auto& [c, n] : rep.conditions) conds[c] = n;
      json contra = json::array();
      std::ostringstream os;
      os << "pairs " << rep.pairs << " predicates " << rep.predicates << "\nholds " << rep.holds
         << " fails " << rep.fails << " unknown " << rep.unknown << " unsupported "
         << rep.unsupported << "\n";
      for (const auto& f : rep.contradictions) {
        contra.push_back({{"what", f.what},
                          {"condition", f.condition},
                          {"status", status_name(f.status)},
                          {"trace", to_json(f.trace)}});
        os << "contradiction: " << f.what << " " << f.condition << " "
           << trace_verdict_name(f.trace.verdict) << "\n";
      }
      os << "contradictions " << rep.contradictions.size() << " seconds " << rep.seconds
         << "\nnote: " << kHeuristicNote;
      emit(as_json,
           {{"pairs", rep.pairs},
            {"predicates", rep.predicates},
            {"holds", rep.holds},
            {"fails", rep.fails},
            {"unknown", rep.unknown},
            {"unsupported", rep.unsupported},
            {"conditions", conds},
            {"contradictions", contra},
            {"seconds", rep.seconds},
            {"note", kHeuristicNote}},
           os.str());
      return rep.contradictions.empty() ? 0 : kExitExpectation;
    }
  } catch (const DslError& e) {
    std::cerr << "error: " << e.what() << " at position " << e.position() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid descriptor\n";
    for (const auto& v : e.violations())
      std::cerr << "  " << v.constraint << " [" << v.citation << "]\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
