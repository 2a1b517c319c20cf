// acceptance: runs one numbered criterion per invocation and ends with a
// single "criterion N: PASS/FAIL" verdict line.
//
// Every tolerance is pinned in reference_thresholds.json next to the binary;
// the numbers were frozen from pilot runs on this hardware.  A red verdict is
// reported as-is, with the measured values in the diagnostics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dicelab/census.hpp"
#include "dicelab/coarseness.hpp"
#include "dicelab/coefficients.hpp"
#include "dicelab/die.hpp"
#include "dicelab/digraph.hpp"
#include "dicelab/error.hpp"
#include "dicelab/experiment.hpp"
#include "dicelab/kernel.hpp"
#include "dicelab/ks.hpp"
#include "dicelab/limit.hpp"
#include "dicelab/rng.hpp"
#include "dicelab/sampling.hpp"
#include "dicelab/spectrum.hpp"
#include "dicelab/spectrum_cache.hpp"

namespace {

using namespace dicelab;
using nlohmann::json;

json g_th;

json load_thresholds() {
  std::ifstream in("reference_thresholds.json");
  if (!in) fail(Err::IoError, "reference_thresholds.json not found in the working directory");
  std::ostringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

std::vector<int> cache_grid() { return g_th["cache"]["n_grid"].get<std::vector<int>>(); }
int cache_l() { return g_th["cache"]["L"].get<int>(); }
std::string cache_dir() { return g_th["cache"]["dir"].get<std::string>(); }

// Eigensolves on first use, CSV-cached afterwards; criteria sharing this are
// serialized at the ctest level so the cache is never written concurrently.
const LimitSpectrum& shared_limit_spectrum() {
  static const LimitSpectrum ls = cached_limit_spectrum(cache_grid(), cache_l(), cache_dir());
  return ls;
}

SpectrumEstimate cached_raw_spectrum(int n) {
  SpectrumEstimate s;
  if (load_spectrum_csv(cache_dir(), n, s)) return s;
  s = spectrum(build_m_star(n, KernelConstruction::closed_form));
  store_spectrum_csv(cache_dir(), s);
  return s;
}

CoefficientSequence linear_ramp(int n) {
  CoefficientSequence c;
  c.n = n;
  c.doubled_c.resize(std::size_t(n));
  for (int j = 1; j <= n; ++j) c.doubled_c[std::size_t(j - 1)] = 2 * j - (n + 1);
  return c;
}

CoefficientSequence zero_sequence(int n) {
  CoefficientSequence c;
  c.n = n;
  c.doubled_c.assign(std::size_t(n), 0);
  return c;
}

// ---------------------------------------------------------------- criterion 1

bool criterion1() {
  const json& th = g_th["criterion1"];
  const std::uint64_t N = th["N"].get<std::uint64_t>();
  const double max_se = th["max_deviation_se"].get<double>();
  const int n_max = th["n_max"].get<int>();
  const std::uint64_t seed = th["seed"].get<std::uint64_t>();

  bool margins_ok = true;
  double worst = 0.0;
  std::string worst_label;
  for (Model model : {Model::multiset, Model::balanced_sequence}) {
    for (int n = 2; n <= n_max; ++n) {
      const ExactCensus census = enumerate_exact(model, n);
      for (std::size_t i = 0; i < census.classes.size(); ++i) {
        const auto fa = frequency_counts(census.classes[i]);
        for (std::size_t j = 0; j < census.classes.size(); ++j) {
          const auto cb = coefficient_sequence(frequency_counts(census.classes[j]));
          if (doubled_margin_via_coefficients(fa, cb) != census.table[i][j].doubled_margin) {
            margins_ok = false;
          }
        }
      }
      for (int m : {2, 3}) {
        ExperimentConfig cfg;
        cfg.model = model;
        cfg.n = n;
        cfg.m = m;
        cfg.N = N;
        cfg.seed = seed;
        cfg.sampler = SamplerMethod::exact_dp;
        cfg.substreams = 16;
        cfg.threads = 1;
        const auto checks = compare_to_census(run_experiment(cfg), census);
        for (const auto& c : checks) {
          if (c.deviation_se > worst) {
            worst = c.deviation_se;
            worst_label = std::string(model_name(model)) + " n=" + std::to_string(n) +
                          " m=" + std::to_string(m) + " code=" + std::to_string(c.code);
          }
        }
      }
    }
  }
  std::printf("  margin formulations identical on every census pair: %s\n",
              margins_ok ? "yes" : "NO");
  std::printf("  worst pattern deviation: %.2f SE (%s), limit %.1f\n", worst,
              worst_label.c_str(), max_se);
  return margins_ok && worst <= max_se;
}

// ---------------------------------------------------------------- criterion 2

bool criterion2() {
  const json& th = g_th["criterion2"];
  const auto grid = th["grid"].get<std::vector<int>>();
  const double ent_tol = th["entrywise_tol"].get<double>();
  const double null_tol = th["null_tol_per_n2"].get<double>();
  const double ratio_max = th["constant_ratio_max"].get<double>();

  bool entry_ok = true, skew_ok = true, null_ok = true;
  std::vector<KernelConstants> consts;
  for (int n : grid) {
    const auto closed = build_m_star(n, KernelConstruction::closed_form);
    const auto proj = build_m_star(n, KernelConstruction::projection);
    const double ent = (closed.entries - proj.entries).cwiseAbs().maxCoeff();
    if (ent > ent_tol) entry_ok = false;
    const double skew = (closed.entries + closed.entries.transpose()).cwiseAbs().maxCoeff();
    if (skew != 0.0) skew_ok = false;
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd lin(n);
    for (int i = 0; i < n; ++i) lin(i) = double(i + 1);
    const double n2 = double(n) * double(n);
    const double nl = std::max((closed.entries * ones).cwiseAbs().maxCoeff(),
                               (closed.entries * lin).cwiseAbs().maxCoeff());
    if (nl > null_tol * n2) null_ok = false;
    consts.push_back(kernel_constants(closed));
    std::printf("  n=%4d  entry_diff=%.2e  null=%.2e  max_entry=%.6f row_norm=%.6f"
                " frob/n=%.6f lipschitz=%.4f\n",
                n, ent, nl, consts.back().max_entry, consts.back().row_norm,
                consts.back().frob_over_n, consts.back().lipschitz);
  }

  const struct {
    const char* name;
    double KernelConstants::* member;
  } families[] = {{"max_entry", &KernelConstants::max_entry},
                  {"row_norm", &KernelConstants::row_norm},
                  {"frob_over_n", &KernelConstants::frob_over_n},
                  {"lipschitz", &KernelConstants::lipschitz}};
  bool ratios_ok = true;
  for (const auto& fam : families) {
    double lo = 1e300, hi = 0.0, lo64 = 1e300, hi64 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = consts[i].*fam.member;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      if (grid[i] >= 64) {
        lo64 = std::min(lo64, v);
        hi64 = std::max(hi64, v);
      }
    }
    const double ratio = hi / lo;
    std::printf("  %-12s max/min = %.3f over the full grid (%.3f on n >= 64), limit %.2f\n",
                fam.name, ratio, hi64 / lo64, ratio_max);
    if (ratio > ratio_max) ratios_ok = false;
  }
  if (!ratios_ok) {
    std::printf("  the n=8 transient carries two families past the pinned ratio; the n >= 64\n"
                "  subgrid sits within it, so the red verdict documents the small-n drift\n");
  }
  return entry_ok && skew_ok && null_ok && ratios_ok;
}

// ---------------------------------------------------------------- criterion 3

bool criterion3() {
  const json& th = g_th["criterion3"];
  const double pair_tol = th["pair_tol_per_n"].get<double>();
  const int odd_n = th["odd_n"].get<int>();
  const int band_ells = th["band_ells"].get<int>();
  const double band_factor = th["band_factor"].get<double>();
  const int match_ells = th["scaled_match_ells"].get<int>();
  const double match_tol = th["scaled_match_rel_tol"].get<double>();

  const SpectrumEstimate s512 = cached_raw_spectrum(512);
  const SpectrumEstimate s1024 = cached_raw_spectrum(1024);
  // Fresh solve so the pairing check runs even when both spectra come from
  // the CSV cache.
  spectrum(build_m_star(512, KernelConstruction::closed_form), pair_tol);
  std::printf("  eigenvalue pairing holds at pair_tol=%.1e*n for n=512\n", pair_tol);

  const SpectrumEstimate sodd = spectrum(build_m_star(odd_n, KernelConstruction::closed_form));
  const bool odd_ok = sodd.residual_zero_count == 1;
  std::printf("  n=%d zero modes: %d (want 1)\n", odd_n, sodd.residual_zero_count);

  const LimitSpectrum& ls = shared_limit_spectrum();
  double lo = 1e300, hi = 0.0;
  for (int l = 0; l < band_ells; ++l) {
    const double v = double(l + 1) * ls.sigmas[std::size_t(l)];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool band_ok = hi / lo <= band_factor;
  std::printf("  ell*sigma_ell over ell<=%d: [%.6f, %.6f], spread %.3f (limit %.1f)\n",
              band_ells, lo, hi, hi / lo, band_factor);

  double worst = 0.0;
  for (int l = 0; l < match_ells; ++l) {
    const double a = s512.sigmas[std::size_t(l)] / 512.0;
    const double b = s1024.sigmas[std::size_t(l)] / 1024.0;
    worst = std::max(worst, std::abs(a - b) / std::max(a, b));
  }
  const bool match_ok = worst <= match_tol;
  std::printf("  scaled sigma match over ell<=%d: worst rel dev %.4f (limit %.2f)\n", match_ells,
              worst, match_tol);

  return odd_ok && band_ok && match_ok;
}

// ---------------------------------------------------------------- criterion 4

bool criterion4() {
  const json& th = g_th["criterion4"];
  const std::uint64_t N = th["N"].get<std::uint64_t>();
  const std::uint64_t seed = th["seed"].get<std::uint64_t>();
  const double z99 = th["z99"].get<double>();

  const LimitSpectrum& ls = shared_limit_spectrum();
  const LimitSampler sampler(ls, cache_l());
  Rng rng(seed, "acceptance4");

  std::uint64_t edge = 0, cycle3 = 0, intrans = 0, forest3 = 0, cycle5 = 0, cycle4 = 0;
  std::uint64_t zeros = 0;
  std::vector<double> g;
  double h[10];
  for (std::uint64_t i = 0; i < N; ++i) {
    sampler.draw_gaussians(5, rng, g);
    int idx = 0;
    for (int j = 0; j < 5; ++j) {
      for (int k = j + 1; k < 5; ++k) {
        h[idx] = sampler.entry(g, j, k);
        if (h[idx] == 0.0) ++zeros;
        ++idx;
      }
    }
    const double h01 = h[0], h02 = h[1], h03 = h[2], h04 = h[3];
    const double h12 = h[4], h13 = h[5], h23 = h[7], h34 = h[9];
    if (h01 > 0) ++edge;
    if (h01 > 0 && h12 > 0 && h02 < 0) ++cycle3;
    if ((h01 > 0 && h12 > 0 && h02 < 0) || (h01 < 0 && h12 < 0 && h02 > 0)) ++intrans;
    if (h01 > 0 && h12 > 0 && h23 > 0) ++forest3;
    if (h01 > 0 && h12 > 0 && h23 > 0 && h34 > 0 && h04 < 0) ++cycle5;
    if (h01 > 0 && h12 > 0 && h23 > 0 && h03 < 0) ++cycle4;
  }

  const double dN = double(N);
  const auto band = [&](const char* name, std::uint64_t hits, double want, double tol) {
    const double p = double(hits) / dN;
    const bool ok = std::abs(p - want) <= tol;
    std::printf("  %-12s p_hat=%.6f want %.6f +- %.4f  %s\n", name, p, want, tol,
                ok ? "ok" : "OUT");
    return ok;
  };
  bool ok = true;
  ok &= band("edge", edge, 0.5, th["edge_tol"].get<double>());
  ok &= band("cycle3", cycle3, 0.125, th["cycle3_tol"].get<double>());
  ok &= band("intransitive", intrans, 0.25, th["intransitive_tol"].get<double>());
  ok &= band("forest3", forest3, 0.125, th["forest3_tol"].get<double>());
  ok &= band("cycle5", cycle5, 0.03125, th["cycle5_tol"].get<double>());

  const double p4 = double(cycle4) / dN;
  const double se4 = std::sqrt(p4 * (1.0 - p4) / dN);
  const double floor4 = th["cycle4_floor"].get<double>();
  const bool c4_ok = p4 - z99 * se4 > floor4;
  std::printf("  cycle4       p_hat=%.6f, 99%% lower bound %.6f, floor %.6f  %s\n", p4,
              p4 - z99 * se4, floor4, c4_ok ? "ok" : "OUT");
  std::printf("  exact zero entries: %llu\n", (unsigned long long)zeros);
  return ok && c4_ok;
}

// ---------------------------------------------------------------- criterion 5

bool criterion5() {
  const json& th = g_th["criterion5"];
  const std::uint64_t N = th["N"].get<std::uint64_t>();
  const std::uint64_t seed = th["seed"].get<std::uint64_t>();
  const int n_max = th["involution_n_max"].get<int>();

  LimitSpectrum spec;
  spec.n_grid = {64, 96};
  spec.sigmas = {0.5, 0.25};
  spec.uncertainty = {0.0, 0.0};
  const TailPolicy loose{1e12};

  bool flips_ok = true;
  for (int v = 1; v <= 3; ++v) {
    Rng rng(seed, "acceptance5-flip", std::uint64_t(v));
    const auto chk = vertex_flip_check(named_pattern("cycle3"), v, N, 2, spec, rng, loose);
    std::printf("  vertex flip v=%d: base=%llu/%llu transformed equal: %s\n", v,
                (unsigned long long)(std::uint64_t(chk.base.p_hat * double(N) + 0.5)),
                (unsigned long long)N, chk.equal_counts ? "yes" : "NO");
    flips_ok = flips_ok && chk.equal_counts;
  }
  Rng rng(seed, "acceptance5-reversal");
  const auto rev = reversal_check(named_pattern("path2"), N, 2, spec, rng, loose);
  std::printf("  full reversal on path2 equal counts: %s\n", rev.equal_counts ? "yes" : "NO");

  bool involution_ok = true;
  for (Model model : {Model::multiset, Model::balanced_sequence}) {
    for (int n = 2; n <= n_max; ++n) {
      if (!census_involution_ok(enumerate_exact(model, n))) {
        involution_ok = false;
        std::printf("  involution FAILED for %s n=%d\n", model_name(model), n);
      }
    }
  }
  std::printf("  complement involution through n=%d: %s\n", n_max,
              involution_ok ? "exact" : "BROKEN");
  return flips_ok && rev.equal_counts && involution_ok;
}

// ---------------------------------------------------------------- criterion 6

bool criterion6() {
  const json& th = g_th["criterion6"];
  const std::uint64_t seed = th["seed"].get<std::uint64_t>();

  ExperimentConfig icfg;
  icfg.model = Model::multiset;
  icfg.n = th["intransitive_n"].get<int>();
  icfg.m = 3;
  icfg.N = th["N_intransitive"].get<std::uint64_t>();
  icfg.seed = seed;
  icfg.sampler = SamplerMethod::mcmc;
  icfg.threads = 1;
  const double frac = intransitive_fraction(run_experiment(icfg));
  const double lo = th["intransitive_lo"].get<double>();
  const double hi = th["intransitive_hi"].get<double>();
  const bool intrans_ok = frac >= lo && frac <= hi;
  std::printf("  multiset n=%d intransitive fraction: %.4f (band [%.2f, %.2f])  %s\n", icfg.n,
              frac, lo, hi, intrans_ok ? "ok" : "OUT");

  const LimitSpectrum& ls = shared_limit_spectrum();
  const LimitSampler sampler(ls, cache_l());
  const std::uint64_t NM = th["N_margins"].get<std::uint64_t>();
  std::vector<double> limit_samples;
  limit_samples.reserve(NM);
  {
    Rng rng(seed, "acceptance6-limit");
    std::vector<double> g;
    for (std::uint64_t i = 0; i < NM; ++i) {
      sampler.draw_gaussians(2, rng, g);
      limit_samples.push_back(sampler.entry(g, 0, 1));
    }
  }

  bool ks_ok = true;
  for (Model model : {Model::multiset, Model::balanced_sequence}) {
    const bool mult = model == Model::multiset;
    const double c = th[mult ? "scale_multiset" : "scale_balanced"].get<double>();
    const double c_wrong = th[mult ? "scale_balanced" : "scale_multiset"].get<double>();
    const double threshold =
        th[mult ? "ks_threshold_multiset" : "ks_threshold_balanced"].get<double>();
    ExperimentConfig cfg;
    cfg.model = model;
    cfg.n = th["margin_n"].get<int>();
    cfg.m = 2;
    cfg.N = NM;
    cfg.seed = seed + (mult ? 1 : 2);
    cfg.sampler = SamplerMethod::mcmc;
    cfg.threads = 1;
    cfg.margin_cap = NM;
    const ExperimentResult r = run_experiment(cfg);
    std::vector<double> matched, mismatched;
    matched.reserve(r.margin_samples.size());
    mismatched.reserve(r.margin_samples.size());
    for (std::int64_t dm : r.margin_samples) {
      matched.push_back(c * (0.5 * double(dm)) / double(cfg.n));
      mismatched.push_back(c_wrong * (0.5 * double(dm)) / double(cfg.n));
    }
    const double ks = ks_distance(matched, limit_samples);
    const double ks_wrong = ks_distance(mismatched, limit_samples);
    const bool below = ks <= threshold;
    const bool ordered = ks_wrong > ks;
    std::printf("  %s n=%d margin KS: %.4f (threshold %.3f) mismatched-scale KS: %.4f  %s\n",
                model_name(model), cfg.n, ks, threshold, ks_wrong,
                below && ordered ? "ok" : "OUT");
    ks_ok = ks_ok && below && ordered;
  }
  return intrans_ok && ks_ok;
}

// ---------------------------------------------------------------- criterion 7

bool criterion7() {
  const json& th = g_th["criterion7"];
  const std::uint64_t seed = th["seed"].get<std::uint64_t>();
  const LimitSpectrum& ls = shared_limit_spectrum();
  const TailPolicy loose{1e12};

  LimitSpectrum single;
  single.n_grid = ls.n_grid;
  single.sigmas = {ls.sigmas[0]};
  single.uncertainty = {0.0};
  const double oracle = alpha_single_mode(ls.sigmas[0]);
  const auto mc = alpha_estimate_parallel(single, 1, th["N_single_mode"].get<std::uint64_t>(),
                                          seed, 64, 1, loose);
  const double rel = std::abs(mc.alpha - oracle) / oracle;
  const bool single_ok = rel <= th["single_mode_rel_tol"].get<double>();
  std::printf("  single-mode alpha: closed form %.6f, MC %.6f +- %.6f, rel dev %.4f  %s\n",
              oracle, mc.alpha, mc.ci95, rel, single_ok ? "ok" : "OUT");

  const std::uint64_t NA = th["N_alpha"].get<std::uint64_t>();
  const auto full = alpha_estimate_parallel(ls, cache_l(), NA, seed, 64, 1);
  LimitSpectrum doubled = ls;
  for (double& s : doubled.sigmas) s *= 2.0;
  const auto half = alpha_estimate_parallel(doubled, cache_l(), NA, seed, 64, 1);
  const bool homog_ok = std::abs(2.0 * half.alpha - full.alpha) <= full.ci95;
  std::printf("  alpha=%.6f +- %.6f, truncation bias %.2e, anomalies %llu\n", full.alpha,
              full.ci95, full.truncation_bias, (unsigned long long)full.anomalies);
  std::printf("  doubled-spectrum alpha*2 = %.6f (homogeneity dev %.2e, ci %.2e)  %s\n",
              2.0 * half.alpha, std::abs(2.0 * half.alpha - full.alpha), full.ci95,
              homog_ok ? "ok" : "OUT");

  const auto tie_n = th["tie_n"].get<std::vector<int>>();
  const auto band = th["tie_band"].get<std::vector<double>>();
  const std::uint64_t NT = th["N_tie"].get<std::uint64_t>();
  bool ties_ok = true;
  double ratio_num = 0.0, ratio_den = 1.0;
  for (Model model : {Model::multiset, Model::balanced_sequence}) {
    const bool mult = model == Model::multiset;
    const double target_scale = mult ? 1.0 : 2.0;
    const auto curve = tie_rate_curve(model, tie_n, NT, seed + (mult ? 11 : 12));
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const double want = target_scale * full.alpha;
      const double dev = std::abs(curve[i].n_p_hat - want) / want;
      const bool ok = dev <= band[i];
      std::printf("  %s n=%d: n*P[tie]=%.4f +- %.4f, limit %.4f, rel dev %.3f (band %.2f)  %s\n",
                  model_name(model), curve[i].n, curve[i].n_p_hat, curve[i].ci95, want, dev,
                  band[i], ok ? "ok" : "OUT");
      ties_ok = ties_ok && ok;
      if (curve[i].n == tie_n.back()) {
        (mult ? ratio_den : ratio_num) = curve[i].n_p_hat;
      }
    }
  }
  const double ratio = ratio_num / ratio_den;
  const bool ratio_ok =
      ratio >= th["ratio_lo"].get<double>() && ratio <= th["ratio_hi"].get<double>();
  std::printf("  balanced/multiset tie ratio at n=%d: %.3f (band [%.1f, %.1f])  %s\n",
              tie_n.back(), ratio, th["ratio_lo"].get<double>(), th["ratio_hi"].get<double>(),
              ratio_ok ? "ok" : "OUT");
  return single_ok && homog_ok && ties_ok && ratio_ok;
}

// ---------------------------------------------------------------- criterion 8

bool criterion8() {
  const json& th = g_th["criterion8"];
  const int n = th["n"].get<int>();
  const std::uint64_t N = th["N"].get<std::uint64_t>();
  const auto points =
      coarse_fraction(Model::multiset, {n}, N, th["seed"].get<std::uint64_t>());
  const double min_frac = th["coarse_min_fraction"].get<double>();
  const bool frac_ok = points[0].fraction >= min_frac;
  std::printf("  multiset n=%d coarse fraction: %.4f of %llu (well-bounded %.4f), floor %.2f  %s\n",
              n, points[0].fraction, (unsigned long long)N,
              double(points[0].well_bounded_count) / double(N), min_frac,
              frac_ok ? "ok" : "OUT");
  if (!frac_ok) {
    // Per-condition tally to show which literal threshold starves the
    // classification.
    Rng rng(th["seed"].get<std::uint64_t>(), "acceptance8-diagnose");
    auto s = make_sampler(Model::multiset, n, SamplerMethod::mcmc);
    const int probes = 200;
    int tally[6] = {0, 0, 0, 0, 0, 0};
    std::int64_t s5_sum = 0;
    for (int t = 0; t < probes; ++t) {
      const auto rep = check_coarse(coefficient_sequence(s->sample_frequency(rng)));
      tally[0] += rep.s1;
      tally[1] += rep.s2;
      tally[2] += rep.s3;
      tally[3] += rep.s4;
      tally[4] += rep.s5;
      tally[5] += rep.s6;
      s5_sum += rep.s5_count;
    }
    const double ln = std::log(double(n));
    std::printf("  per-condition pass rates over %d probes: s1=%.2f s2=%.2f s3=%.2f s4=%.2f"
                " s5=%.2f s6=%.2f\n",
                probes, tally[0] / double(probes), tally[1] / double(probes),
                tally[2] / double(probes), tally[3] / double(probes), tally[4] / double(probes),
                tally[5] / double(probes));
    std::printf("  mean S5 index count %.1f vs floor n/log n = %.1f; the triple event\n"
                "  c_j = c_{j+1} = c_{j+2} - 1/2 has per-index probability 25/1024 under the\n"
                "  geometric profile, so the count ~ n/41 crosses the floor only near"
                " n ~ e^41\n",
                double(s5_sum) / double(probes), double(n) / ln);
  }

  const int cn = th["counterexample_n"].get<int>();
  const auto zero = check_coarse(zero_sequence(cn));
  const bool zero_ok = zero.well_bounded && !zero.coarse;
  std::printf("  zero sequence at n=%d: well_bounded=%d coarse=%d (want 1, 0)\n", cn,
              int(zero.well_bounded), int(zero.coarse));
  const auto lin = check_coarse(linear_ramp(cn));
  const bool lin_ok = !lin.well_bounded && !lin.coarse;
  std::printf("  linear ramp at n=%d: well_bounded=%d coarse=%d (want 0, 0; amplitude bound"
              " trips first at this size, j=%d)\n",
              cn, int(lin.well_bounded), int(lin.coarse), lin.s1_index);
  return frac_ok && zero_ok && lin_ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..8>\n");
    return 3;
  }
  const int criterion = std::atoi(argv[1]);
  if (criterion < 1 || criterion > 8) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..8>\n");
    return 3;
  }
  static const char* kNames[] = {
      "exact-oracle equivalence",   "kernel invariants",      "spectrum structure",
      "limit tournament densities", "symmetry suite",         "finite-n convergence",
      "tie constant",               "coarseness",
  };
  try {
    g_th = load_thresholds();
    bool ok = false;
    switch (criterion) {
      case 1: ok = criterion1(); break;
      case 2: ok = criterion2(); break;
      case 3: ok = criterion3(); break;
      case 4: ok = criterion4(); break;
      case 5: ok = criterion5(); break;
      case 6: ok = criterion6(); break;
      case 7: ok = criterion7(); break;
      case 8: ok = criterion8(); break;
    }
    std::printf("criterion %d: %s - %s\n", criterion, ok ? "PASS" : "FAIL",
                kNames[criterion - 1]);
    return ok ? 0 : 1;
  } catch (const DiceLabError& e) {
    std::printf("criterion %d: FAIL - %s (%s)\n", criterion, kNames[criterion - 1], e.what());
    return e.code() == Err::IoError ? 2 : 1;
  } catch (const std::exception& e) {
    std::printf("criterion %d: FAIL - %s (internal: %s)\n", criterion, kNames[criterion - 1],
                e.what());
    return 1;
  }
}
