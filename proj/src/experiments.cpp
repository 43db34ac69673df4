// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "monoadv/consistent_set.hpp"
#include "monoadv/error.hpp"
#include "monoadv/oig.hpp"
#include "monoadv/trials.hpp"

namespace monoadv {

namespace {

// Namespace tags for seeds derived from a trial seed.
constexpr std::uint64_t kLearnerTag = 4;
constexpr std::uint64_t kExtraPointTag = 5;
constexpr std::uint64_t kCouponTag = 6;
constexpr std::uint64_t kSchemeTag = 0x5c4e3e;

[[noreturn]] void bad(const std::string& msg) {
  fail(ErrorCode::invalid_parameters, msg);
}

std::uint64_t isqrt_ceil(std::uint64_t n) {
  auto k = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (k * k > n) --k;
  while (k * k < n) ++k;
  return k;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::oig_lb: return "oig_lb";
    case ExperimentKind::oig_lb_general: return "oig_lb_general";
    case ExperimentKind::majority_lb: return "majority_lb";
    case ExperimentKind::erm_ub: return "erm_ub";
    case ExperimentKind::oblivious_oig: return "oblivious_oig";
    case ExperimentKind::coupon: return "coupon";
  }
  return "oig_lb";
}

ExperimentKind parse_experiment(std::string_view text) {
  for (auto k : {ExperimentKind::oig_lb, ExperimentKind::oig_lb_general,
                 ExperimentKind::majority_lb, ExperimentKind::erm_ub,
                 ExperimentKind::oblivious_oig, ExperimentKind::coupon}) {
    if (text == to_string(k)) return k;
  }
  fail(ErrorCode::unknown_id, "unknown experiment: " + std::string(text));
}

std::string_view to_string(ErmMode mode) {
  switch (mode) {
    case ErmMode::worst: return "worst";
    case ErmMode::first: return "first";
    case ErmMode::random: return "random";
  }
  return "worst";
}

ErmMode parse_erm_mode(std::string_view text) {
  if (text == "worst" || text == "worst_consistent") return ErmMode::worst;
  if (text == "first") return ErmMode::first;
  if (text == "random") return ErmMode::random;
  fail(ErrorCode::unknown_id, "unknown erm_mode: " + std::string(text));
}

std::uint64_t lower_bound_domain_size(std::uint64_t n, std::uint64_t d, double c) {
  if (d == 0 || n <= d) bad("need n > d >= 1 for r = ceil(c n / ln(n/d))");
  if (!(c > 0.0)) bad("c must be positive");
  const double ratio = static_cast<double>(n) / static_cast<double>(d);
  return static_cast<std::uint64_t>(std::ceil(c * static_cast<double>(n) / std::log(ratio)));
}

double erm_upper_bound(std::uint64_t n, std::uint64_t d, double delta) {
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  return 100.0 * (dd * std::log(nn / dd) + std::log(1.0 / delta)) / nn;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return derive_seed(master_seed, trial);
}

DerivedParams derive(const ExperimentConfig& cfg) {
  if (cfg.n < 1) bad("n must be at least 1");
  if (cfg.trials < 1) bad("trials must be at least 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) bad("delta must lie in (0, 1)");
  DerivedParams p;
  auto require_m = [&](std::uint64_t forced, const char* why) {
    if (cfg.m && *cfg.m != forced) {
      bad(std::string("m must equal ") + why + " (" + std::to_string(forced) + ")");
    }
    p.m = forced;
  };
  switch (cfg.experiment) {
    case ExperimentKind::oig_lb:
      p.r = 2 * cfg.n;
      p.class_spec = {ClassKind::oig_lb, p.r, 0, 0, 0};
      require_m(cfg.n, "n");
      break;
    case ExperimentKind::oig_lb_general:
      p.k = cfg.k ? cfg.k : isqrt_ceil(cfg.n);
      if (static_cast<double>(p.k) * cfg.c > static_cast<double>(cfg.n)) {
        bad("need 1 <= k <= n/c");
      }
      p.r = lower_bound_domain_size(cfg.n, p.k, cfg.c);
      p.class_spec = {ClassKind::oig_lb, p.r, 0, 0, 0};
      require_m(p.r, "r");
      break;
    case ExperimentKind::majority_lb: {
      if (cfg.d < 1) bad("d must be at least 1");
      p.r = lower_bound_domain_size(cfg.n, cfg.d, cfg.c);
      if (p.r < cfg.d) bad("r must be at least d");
      if (cfg.erm == ErmKind::random_consistent) {
        if (cfg.copies < 1) bad("K must be at least 1");
        p.class_spec = {ClassKind::majority_lb_rand, p.r, cfg.d, cfg.copies, 0};
      } else {
        p.class_spec = {ClassKind::majority_lb, p.r, cfg.d, 0, 0};
      }
      p.scheme_seed = derive_seed(cfg.seed, kSchemeTag);
      auto t_for = [&](std::uint64_t m) {
        return make_scheme(cfg.voter, cfg.n + m, p.scheme_seed, cfg.delta).min_distinct;
      };
      if (cfg.m) {
        p.m = *cfg.m;
      } else {
        p.m = 1;
        while (p.m * t_for(p.m) < 2 * cfg.n) ++p.m;
      }
      p.min_distinct = t_for(p.m);
      break;
    }
    case ExperimentKind::erm_ub:
      if (cfg.adversary == "subset_missing") {
        p.r = lower_bound_domain_size(cfg.n, cfg.d, cfg.c);
        if (p.r < cfg.d) bad("r must be at least d");
        p.class_spec = {ClassKind::majority_lb, p.r, cfg.d, 0, 0};
        p.m = cfg.m ? *cfg.m : cfg.n;
      } else if (cfg.adversary == "pairing") {
        if (cfg.d != 1) bad("the pairing class has VC dimension 1; set d=1");
        p.r = 2 * cfg.n;
        p.class_spec = {ClassKind::oig_lb, p.r, 0, 0, 0};
        require_m(cfg.n, "n");
      } else if (cfg.adversary == "coupon_pairing") {
        if (cfg.d != 1) bad("the pairing class has VC dimension 1; set d=1");
        p.k = cfg.k ? cfg.k : isqrt_ceil(cfg.n);
        p.r = lower_bound_domain_size(cfg.n, p.k, cfg.c);
        p.class_spec = {ClassKind::oig_lb, p.r, 0, 0, 0};
        require_m(p.r, "r");
      } else {
        fail(ErrorCode::unknown_id, "unknown adversary: " + cfg.adversary);
      }
      break;
    case ExperimentKind::oblivious_oig:
      p.r = 2 * cfg.n;
      p.class_spec = {ClassKind::oig_lb, p.r, 0, 0, 0};
      p.m = cfg.m ? *cfg.m : cfg.n / 2;
      if (p.m > p.r) bad("the oblivious list has at most 2n distinct y-points");
      break;
    case ExperimentKind::coupon:
      if (cfg.d < 1) bad("d must be at least 1");
      if (cfg.r) {
        p.r = cfg.r;
      } else {
        if (static_cast<double>(cfg.n) < cfg.c * static_cast<double>(cfg.d)) {
          bad("need n >= c d");
        }
        p.r = lower_bound_domain_size(cfg.n, cfg.d, cfg.c);
      }
      if (p.r < cfg.d) bad("r must be at least d");
      p.m = 0;
      break;
  }
  return p;
}

// ------------------------------------------------------------- helpers

namespace {

Distribution uniform_x(const HypothesisClass& cls) {
  return Distribution::uniform(cls.domain().x_points());
}

std::unique_ptr<Adversary> make_adversary(const ExperimentConfig& cfg,
                                          const DerivedParams& p,
                                          const Domain& dom) {
  switch (cfg.experiment) {
    case ExperimentKind::oig_lb: return std::make_unique<PairingAdversary>(dom);
    case ExperimentKind::oig_lb_general:
      return std::make_unique<CouponPairingAdversary>(dom, p.m);
    case ExperimentKind::majority_lb:
      return std::make_unique<SubsetMissingAdversary>(dom, p.m);
    case ExperimentKind::erm_ub:
      if (cfg.adversary == "pairing") return std::make_unique<PairingAdversary>(dom);
      if (cfg.adversary == "coupon_pairing") {
        return std::make_unique<CouponPairingAdversary>(dom, p.m);
      }
      return std::make_unique<SubsetMissingAdversary>(dom, p.m);
    case ExperimentKind::oblivious_oig: {
      std::vector<PointId> list;
      for (std::uint64_t i = 0; i < p.m; ++i) list.push_back(dom.y(i));
      return std::make_unique<FixedListAdversary>(std::move(list));
    }
    case ExperimentKind::coupon: break;
  }
  return nullptr;
}

std::uint64_t missing_x(const AdversaryTranscript& t, const Domain& dom) {
  std::vector<char> seen(dom.x_count(), 0);
  for (const auto& ex : t.clean) {
    const Point p = dom.point(ex.point);
    if (p.kind == PointKind::x) seen[p.index] = 1;
  }
  return static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), 0));
}

std::uint64_t monotone_violations(const AdversaryTranscript& t,
                                  const HypothesisClass& cls) {
  std::uint64_t bad_labels = 0;
  for (const auto& ex : t.shuffled) bad_labels += ex.label != cls.target_label(ex.point);
  return bad_labels;
}

struct Context {
  const ExperimentConfig& cfg;
  const DerivedParams& p;
  HypothesisClass cls;
  Distribution dist;
  std::unique_ptr<Adversary> adversary;
  SubsampleScheme scheme;
};

AdversaryTranscript transcript_for(const Context& ctx, std::uint64_t trial) {
  const std::uint64_t seed = trial_seed(ctx.cfg.seed, trial);
  const auto stages = StageSeeds::from_master(seed);
  if (ctx.adversary->oblivious()) {
    return run_oblivious(ctx.dist, ctx.cls, *ctx.adversary, ctx.cfg.n, ctx.p.m,
                         stages, seed);
  }
  return run_adaptive(ctx.dist, ctx.cls, *ctx.adversary, ctx.cfg.n, ctx.p.m, stages,
                      seed);
}

TrialRow run_trial(const Context& ctx, std::uint64_t trial) {
  const auto& cfg = ctx.cfg;
  TrialRow row;
  row.trial = trial;
  row.trial_seed = trial_seed(cfg.seed, trial);

  if (cfg.experiment == ExperimentKind::coupon) {
    Rng rng(derive_seed(row.trial_seed, kCouponTag));
    std::vector<char> seen(ctx.p.r, 0);
    for (std::uint64_t i = 0; i < cfg.n; ++i) seen[rng.uniform_below(ctx.p.r)] = 1;
    row.missing = static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), 0));
    row.event = row.missing >= cfg.d;
    return row;
  }

  const auto t = transcript_for(ctx, trial);
  const auto& data = t.shuffled;
  const auto& cls = ctx.cls;
  const auto& dist = ctx.dist;
  row.monotone_violations = monotone_violations(t, cls);
  row.missing = missing_x(t, cls.domain());
  row.erm_first_error = exact_error(dist, cls, erm_first_consistent(cls, data));
  row.erm_worst_error = worst_consistent_error(cls, data, dist);
  const Rng learner(derive_seed(row.trial_seed, kLearnerTag));

  switch (cfg.experiment) {
    case ExperimentKind::oig_lb:
    case ExperimentKind::oig_lb_general: {
      const OigPredictor predictor(cls, data);
      row.error = exact_error(dist, cls, [&](PointId x) {
        return predictor.probability_of_one(x);
      });
      row.event = row.missing >= std::max<std::uint64_t>(1, ctx.p.k);
      break;
    }
    case ExperimentKind::majority_lb: {
      const Committee committee = majority_vote(ctx.scheme, cfg.erm, cls, data, learner);
      row.error = exact_error(dist, cls, committee);
      row.event = row.missing >= cfg.d;
      break;
    }
    case ExperimentKind::erm_ub: {
      switch (cfg.erm_mode) {
        case ErmMode::worst: row.error = row.erm_worst_error; break;
        case ErmMode::first: row.error = row.erm_first_error; break;
        case ErmMode::random: {
          Rng rng = learner;
          row.error = exact_error(dist, cls, erm_random_consistent(cls, data, rng));
          break;
        }
      }
      row.event = row.missing >= cfg.d;
      break;
    }
    case ExperimentKind::oblivious_oig: {
      const OigPredictor predictor(cls, data);
      row.error = exact_error(dist, cls, [&](PointId x) -> double {
        return predictor.predict(x);
      });
      Rng extra(derive_seed(row.trial_seed, kExtraPointTag));
      std::vector<PointId> combined = t.clean_points();
      combined.push_back(dist.sample(extra));
      for (const auto& ex : t.corrupted) combined.push_back(ex.point);
      const LooAudit audit = loo_audit(cls, combined);
      row.loo_mistakes = audit.mistakes;
      row.target_outdegree = audit.target_outdegree;
      row.event = row.missing >= 1;
      break;
    }
    case ExperimentKind::coupon: break;
  }
  return row;
}

Context make_context(const ExperimentConfig& cfg, const DerivedParams& p) {
  if (cfg.experiment == ExperimentKind::coupon) {
    auto cls = HypothesisClass::oig_lb(1);
    return {cfg, p, cls, uniform_x(cls), nullptr, {}};
  }
  auto cls = HypothesisClass::from_spec(p.class_spec);
  auto dist = uniform_x(cls);
  auto adversary = make_adversary(cfg, p, cls.domain());
  SubsampleScheme scheme;
  if (cfg.experiment == ExperimentKind::majority_lb) {
    scheme = make_scheme(cfg.voter, cfg.n + p.m, p.scheme_seed, cfg.delta);
  }
  return {cfg, p, std::move(cls), std::move(dist), std::move(adversary), std::move(scheme)};
}

}  // namespace

AdversaryTranscript experiment_transcript(const ExperimentConfig& config,
                                          const DerivedParams& params,
                                          std::uint64_t trial) {
  if (config.experiment == ExperimentKind::coupon) return {};
  const Context ctx = make_context(config, params);
  return transcript_for(ctx, trial);
}

double worst_consistent_error(const HypothesisClass& cls,
                              std::span<const LabeledExample> data,
                              const Distribution& dist) {
  const ConsistentSet set = cls.consistent(data);
  if (set.empty()) {
    fail(ErrorCode::realizability_violation, "no consistent hypothesis");
  }
  const auto support = dist.support();
  const bool uniform_over_x =
      dist.is_uniform() && support.size() == cls.domain().x_count() &&
      std::all_of(support.begin(), support.end(), [&](PointId id) {
        return cls.domain().point(id).kind == PointKind::x;
      });
  if (cls.kind() != ClassKind::table && uniform_over_x) {
    return set.nontarget_count() > 0 ? cls.uniform_x_error_ceiling() : 0.0;
  }
  if (set.size() > 100'000) {
    fail(ErrorCode::capacity_exceeded, "consistent set too large to enumerate");
  }
  double worst = 0.0;
  for (std::uint64_t k = 0; k < set.size(); ++k) {
    worst = std::max(worst, exact_error(dist, cls, set.at(k)));
  }
  return worst;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
  ExperimentResult res;
  res.config = config;
  res.params = derive(config);
  const Context ctx = make_context(config, res.params);
  res.rows = run_trials<TrialRow>(config.trials, workers,
                                  [&](std::uint64_t t) { return run_trial(ctx, t); });

  const auto& p = res.params;
  const double n = static_cast<double>(config.n);
  std::vector<double> values;
  values.reserve(res.rows.size());
  std::uint64_t events = 0;
  double baseline = 0.0;
  std::uint64_t baseline_count = 0;
  bool within_ceiling = true;
  const double ceiling = config.experiment == ExperimentKind::coupon
                             ? 0.0
                             : ctx.cls.uniform_x_error_ceiling();
  for (const auto& row : res.rows) {
    events += row.event;
    res.monotone_violations += row.monotone_violations;
    if (config.experiment == ExperimentKind::coupon) {
      values.push_back(row.event ? 1.0 : 0.0);
    } else {
      values.push_back(*row.error);
    }
    if (row.erm_first_error) {
      baseline += *row.erm_first_error;
      ++baseline_count;
    }
    if (row.erm_worst_error) {
      res.worst_erm_max = std::max(res.worst_erm_max, *row.erm_worst_error);
      within_ceiling = within_ceiling && *row.erm_worst_error <= ceiling;
    }
    if (row.loo_mistakes &&
        (*row.loo_mistakes != *row.target_outdegree || *row.loo_mistakes > 1)) {
      ++res.audit_failures;
    }
  }
  res.estimate = summarize(values, config.seed);
  const double trials = static_cast<double>(res.rows.size());
  res.event_fraction = static_cast<double>(events) / trials;
  if (baseline_count) baseline /= static_cast<double>(baseline_count);
  res.baseline_mean = baseline;
  const double mean = res.estimate.mean;

  bool pass = res.monotone_violations == 0;
  switch (config.experiment) {
    case ExperimentKind::oig_lb:
      res.threshold = 0.25;
      res.relation = "mean>=threshold";
      res.reference = std::pow(1.0 - 1.0 / (2.0 * n), n) / 2.0;
      pass = pass && mean >= res.threshold;
      break;
    case ExperimentKind::oig_lb_general: {
      const double k = static_cast<double>(p.k);
      res.ratio = mean / (k * std::log(n / k) / n);
      res.reference = std::pow(1.0 - 1.0 / static_cast<double>(p.r), n) / 2.0;
      pass = pass && res.event_fraction >= 0.5 && mean > res.baseline_mean;
      if (config.ratio_floor) {
        res.threshold = *config.ratio_floor;
        res.relation = "ratio_in[threshold,4*threshold]";
        pass = pass && res.ratio >= res.threshold && res.ratio <= 4.0 * res.threshold;
      } else {
        res.threshold = 0.5;
        res.relation = "event_fraction>=threshold";
      }
      break;
    }
    case ExperimentKind::majority_lb: {
      const double d = static_cast<double>(config.d);
      const double floor = config.floor.value_or(
          config.erm == ErmKind::random_consistent ? 0.2 : 0.25);
      res.ratio = mean / (d * std::log(n / d) / n);
      res.threshold = floor * ceiling;
      res.relation = "mean>=threshold";
      res.reference = ceiling;
      pass = pass && mean >= res.threshold && within_ceiling;
      break;
    }
    case ExperimentKind::erm_ub: {
      const std::uint64_t vc = p.class_spec.kind == ClassKind::oig_lb ? 1 : config.d;
      res.threshold = erm_upper_bound(config.n, vc, config.delta);
      res.relation = "max<=threshold";
      res.reference = ceiling;
      bool per_trial_ok = true;
      for (const auto& row : res.rows) per_trial_ok = per_trial_ok && *row.error <= ceiling;
      pass = pass && res.estimate.max <= res.threshold && per_trial_ok && within_ceiling;
      break;
    }
    case ExperimentKind::oblivious_oig:
      res.threshold = 1.0 / (n + 1.0);
      res.relation = "mean<=threshold+3se";
      pass = pass && mean <= res.threshold + 3.0 * res.estimate.se &&
             res.audit_failures == 0;
      break;
    case ExperimentKind::coupon: {
      const double r = static_cast<double>(p.r);
      res.threshold = 0.5;
      res.relation = "event_fraction>=threshold";
      res.reference = r * std::pow(1.0 - 1.0 / r, n);
      pass = pass && res.event_fraction >= 0.5;
      break;
    }
  }
  res.pass = pass;
  return res;
}

}  // namespace monoadv
