// dicelab: seeded, cache-aware driver tying samplers, spectra, limit
// simulation, and finite-n experiments into machine-readable runs.
//
// Exit codes: 0 success, 1 internal error, 2 missing/invalid input artifact,
// 3 invalid configuration.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dicelab/census.hpp"
#include "dicelab/die.hpp"
#include "dicelab/digraph.hpp"
#include "dicelab/error.hpp"
#include "dicelab/experiment.hpp"
#include "dicelab/io_util.hpp"
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
using Clock = std::chrono::steady_clock;

const std::vector<int> kDefaultGrid{1600, 1824, 2048};
constexpr int kDefaultL = 400;

int exit_code_for(const DiceLabError& e) {
  switch (e.code()) {
    case Err::IoError:
      return 2;
    case Err::FaceOutOfRange:
    case Err::BadSum:
    case Err::DimensionMismatch:
    case Err::MethodUnavailable:
    case Err::RejectionBudgetExceeded:
    case Err::TooLarge:
    case Err::GridTooSmall:
    case Err::TruncationTooSmall:
    case Err::DomainError:
    case Err::BadPattern:
    case Err::BadConfig:
      return 3;
    default:
      return 1;  // PairingFailure, WitnessSearchFailed
  }
}

json manifest_json(const std::string& subcommand, json config, std::uint64_t seed,
                   json cache, const std::vector<std::string>& outputs) {
  json m;
  m["subcommand"] = subcommand;
  m["config"] = std::move(config);
  m["seed"] = seed;
  m["cache"] = std::move(cache);
  m["outputs"] = outputs;
  return m;
}

void emit(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text_file(out_path, text);
  }
}

double wall_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Model parse_model(const std::string& s) {
  if (s == "multiset") return Model::multiset;
  if (s == "balanced" || s == "balanced_sequence") return Model::balanced_sequence;
  fail(Err::BadConfig, "unknown model '" + s + "'");
}

SamplerMethod parse_sampler(const std::string& s, Model model, int n) {
  if (s == "auto") return auto_method(model, n, SamplerConfig{});
  if (s == "exact_dp") return SamplerMethod::exact_dp;
  if (s == "geometric_rejection") return SamplerMethod::geometric_rejection;
  if (s == "uniform_rejection") return SamplerMethod::uniform_rejection;
  if (s == "mcmc") return SamplerMethod::mcmc;
  fail(Err::BadConfig, "unknown sampler '" + s + "'");
}

// cmd_limit requires an existing cache; it never eigensolves.
LimitSpectrum spectrum_from_cache(const std::string& dir, const std::vector<int>& grid, int L) {
  LimitSpectrum ls;
  if (load_limit_sidecar(dir, grid, L, ls)) return ls;
  std::vector<SpectrumEstimate> spectra;
  for (int n : grid) {
    SpectrumEstimate s;
    if (!load_spectrum_csv(dir, n, s)) {
      fail(Err::IoError, "spectrum cache missing " + spectrum_csv_path(dir, n) +
                             "; run `dicelab spectrum` first");
    }
    spectra.push_back(std::move(s));
  }
  return fit_limit_spectrum(grid, spectra, L);
}

struct SpectrumArgs {
  std::vector<int> grid = kDefaultGrid;
  int L = kDefaultL;
  std::string cache_dir;
  std::string out;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const auto t0 = Clock::now();
  int min_n = a.grid.empty() ? 0 : a.grid[0];
  for (int n : a.grid) min_n = std::min(min_n, n);
  if (a.L > min_n / 4) {
    fail(Err::BadConfig, "--L must be at most min(n-grid)/4 = " + std::to_string(min_n / 4));
  }
  const std::string dir = resolve_cache_dir(a.cache_dir);
  const LimitSpectrum ls = cached_limit_spectrum(a.grid, a.L, dir);

  std::printf("spectrum cache: %s\n", dir.c_str());
  std::printf("%6s %14s %14s %10s\n", "ell", "sigma_ell", "uncertainty", "ell*sigma");
  for (int l = 0; l < a.L && l < 12; ++l) {
    std::printf("%6d %14.8f %14.2e %10.6f\n", l + 1, ls.sigmas[l], ls.uncertainty[l],
                (l + 1) * ls.sigmas[l]);
  }
  double band_lo = 1e300, band_hi = 0.0;
  for (int l = 0; l < a.L; ++l) {
    const double v = (l + 1) * ls.sigmas[l];
    band_lo = std::min(band_lo, v);
    band_hi = std::max(band_hi, v);
  }
  std::printf("ell*sigma_ell band over L=%d: [%.6f, %.6f]\n", a.L, band_lo, band_hi);
  std::printf("tail constant kappa^2 = %.8f, entry variance 2*sum sigma^2 = %.8f\n",
              limit_tail_constant(ls), limit_variance(ls, a.L));

  if (!a.out.empty()) {
    json j;
    j["schema"] = "v1";
    j["kind"] = "spectrum_summary";
    j["n_grid"] = a.grid;
    j["L"] = a.L;
    j["sigma_limit"] = ls.sigmas;
    j["uncertainty"] = ls.uncertainty;
    j["kappa2"] = limit_tail_constant(ls);
    j["entry_variance"] = limit_variance(ls, a.L);
    json cache = {{"dir", dir}, {"sidecar", limit_sidecar_path(dir, a.grid, a.L)}};
    j["manifest"] = manifest_json(
        "spectrum", json{{"n_grid", a.grid}, {"L", a.L}}, 0, cache, {a.out});
    j["timing"] = {{"wall_seconds", wall_since(t0)}};
    emit(j, a.out);
  }
  return 0;
}

struct LimitArgs {
  std::string pattern;
  std::string pattern_file;
  bool alpha = false;
  std::uint64_t N = 1000000;
  int L = kDefaultL;
  std::uint64_t seed = 0;
  std::vector<int> grid = kDefaultGrid;
  std::string cache_dir;
  std::string out;
  int substreams = 64;
  int threads = 0;
  double tail_budget = TailPolicy{}.budget_factor;
  std::uint64_t emit_draws = 0;
};

int cmd_limit(const LimitArgs& a) {
  const auto t0 = Clock::now();
  const int sources = int(!a.pattern.empty()) + int(!a.pattern_file.empty()) + int(a.alpha);
  if (sources != 1) {
    fail(Err::BadConfig, "give exactly one of --pattern, --pattern-file, --alpha");
  }
  const std::string dir = resolve_cache_dir(a.cache_dir);
  const LimitSpectrum ls = spectrum_from_cache(dir, a.grid, a.L);
  TailPolicy policy{a.tail_budget};

  json j;
  j["schema"] = "v1";
  json config = {{"N", a.N},          {"L", a.L},
                 {"n_grid", a.grid},  {"substreams", a.substreams},
                 {"threads", a.threads}, {"tail_budget", a.tail_budget}};
  json cache = {{"dir", dir}, {"n_grid", a.grid}, {"L", a.L}};

  if (a.alpha) {
    const AlphaEstimate est =
        alpha_estimate_parallel(ls, a.L, a.N, a.seed, a.substreams, a.threads, policy);
    j["kind"] = "alpha";
    j["alpha"] = est.alpha;
    j["ci95"] = est.ci95;
    j["truncation_bias"] = est.truncation_bias;
    j["anomalies"] = est.anomalies;
    j["alpha_multiset_tie_limit"] = est.alpha;       // n*P[tie] -> alpha
    j["alpha_balanced_tie_limit"] = 2.0 * est.alpha; // n*P[tie] -> 2*alpha
    config["alpha"] = true;
  } else {
    const DigraphPattern d = a.pattern.empty()
                                 ? pattern_from_json(read_text_file(a.pattern_file))
                                 : named_pattern(a.pattern);
    const ProbabilityEstimate est = digraph_probability_parallel(
        d, a.N, a.L, ls, a.seed, a.substreams, a.threads, policy);
    j["kind"] = "limit_probability";
    j["pattern"] = json::parse(pattern_to_json(d));
    if (!a.pattern.empty()) j["pattern"]["name"] = a.pattern;
    j["m"] = d.m;
    j["p_hat"] = est.p_hat;
    j["ci95"] = est.ci95_halfwidth;
    j["exact_zero_count"] = est.exact_zero_count;
    config["pattern"] = a.pattern.empty() ? a.pattern_file : a.pattern;
  }
  j["N"] = a.N;
  j["L"] = a.L;
  {
    LimitSampler sampler(ls, a.L, policy);
    j["tail_variance"] = sampler.tail_variance();
    if (a.emit_draws > 0) {
      Rng rng(a.seed, "limit-draws");
      std::vector<double> g, draws;
      draws.reserve(a.emit_draws);
      for (std::uint64_t i = 0; i < a.emit_draws; ++i) {
        sampler.draw_gaussians(2, rng, g);
        draws.push_back(sampler.entry(g, 0, 1));
      }
      j["h12_draws"] = draws;
      config["emit_draws"] = a.emit_draws;
    }
  }
  j["seed"] = a.seed;
  j["manifest"] = manifest_json("limit", config, a.seed, cache,
                                a.out.empty() ? std::vector<std::string>{}
                                              : std::vector<std::string>{a.out});
  j["timing"] = {{"wall_seconds", wall_since(t0)}};
  emit(j, a.out);
  return 0;
}

struct ExperimentArgs {
  std::string model = "multiset";
  int n = 0;
  int m = 2;
  std::uint64_t N = 100000;
  std::uint64_t seed = 0;
  std::string sampler = "auto";
  std::uint64_t margin_cap = 1u << 20;
  int substreams = 64;
  int threads = 0;
  std::uint64_t emit_margins = 100000;
  std::string out;
};

int cmd_experiment(const ExperimentArgs& a) {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.model = parse_model(a.model);
  cfg.n = a.n;
  cfg.m = a.m;
  cfg.N = a.N;
  cfg.seed = a.seed;
  cfg.sampler = parse_sampler(a.sampler, cfg.model, a.n);
  cfg.margin_cap = a.margin_cap;
  cfg.substreams = a.substreams;
  cfg.threads = a.threads;
  make_sampler(cfg.model, cfg.n, cfg.sampler, cfg.sampler_cfg);  // validate before the run

  const ExperimentResult r = run_experiment(cfg);
  json j = json::parse(experiment_to_json(r));
  if (cfg.m == 2 && a.emit_margins > 0 && !r.margin_samples.empty()) {
    const std::size_t keep = std::min<std::size_t>(r.margin_samples.size(), a.emit_margins);
    j["margins"] = {{"doubled", std::vector<std::int64_t>(r.margin_samples.begin(),
                                                          r.margin_samples.begin() + keep)},
                    {"scale_c", cfg.model == Model::multiset ? 0.5 : 1.0}};
  }
  json config = {{"model", a.model},     {"n", a.n},
                 {"m", a.m},             {"N", a.N},
                 {"sampler", a.sampler}, {"margin_cap", a.margin_cap},
                 {"substreams", a.substreams}, {"emit_margins", a.emit_margins}};
  j["manifest"] = manifest_json("experiment", config, a.seed, json::object(),
                                a.out.empty() ? std::vector<std::string>{}
                                              : std::vector<std::string>{a.out});
  j["timing"] = {{"wall_seconds", wall_since(t0)}};
  emit(j, a.out);
  return 0;
}

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string out;
  std::string csv;
};

// Known limit values of the named patterns; cycle4 only has the > 1/16 bound.
double reference_probability(const std::string& name) {
  if (name == "edge") return 0.5;
  if (name == "path2") return 0.25;
  if (name == "path3") return 0.125;
  if (name == "cycle3") return 0.125;
  if (name == "cycle5") return 0.03125;
  if (name == "tournament3_transitive") return 0.125;
  return -1.0;
}

int cmd_report(const ReportArgs& a) {
  std::vector<json> limits, experiments, alphas, spectra;
  for (const std::string& path : a.inputs) {
    json j;
    try {
      j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
      fail(Err::IoError, path + ": " + e.what());
    }
    const std::string kind = j.value("kind", "");
    j["__path"] = path;
    if (kind == "limit_probability") limits.push_back(std::move(j));
    else if (kind == "experiment") experiments.push_back(std::move(j));
    else if (kind == "alpha") alphas.push_back(std::move(j));
    else if (kind == "spectrum_summary" || kind == "limit_spectrum") spectra.push_back(std::move(j));
    else fail(Err::IoError, path + ": unrecognized kind '" + kind + "'");
  }

  std::string md;
  std::vector<std::string> csv_rows;
  char buf[512];
  auto row = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    md += buf;
  };

  md += "# dicelab report\n";
  for (const json& s : spectra) {
    md += "\n## Spectrum\n\n";
    const auto sig = s.value("sigma_limit", std::vector<json>{});
    std::vector<double> sigmas;
    for (const json& v : sig) {
      sigmas.push_back(v.is_string() ? parse_double(v.get<std::string>()) : v.get<double>());
    }
    row("- source: %s\n", s["__path"].get<std::string>().c_str());
    row("- L = %zu", sigmas.size());
    if (!sigmas.empty()) row(", sigma_1 = %.6f", sigmas[0]);
    if (sigmas.size() > 1) row(", sigma_2 = %.6f", sigmas[1]);
    md += "\n";
  }
  if (!limits.empty()) {
    md += "\n## Limit probabilities\n\n";
    md += "| pattern | m | N | L | p_hat | ci95 | reference | dev/ci |\n";
    md += "|---|---|---|---|---|---|---|---|\n";
    for (const json& l : limits) {
      const std::string name = l["pattern"].value("name", "custom");
      const double p = l["p_hat"].get<double>();
      const double ci = l["ci95"].get<double>();
      const double ref = reference_probability(name);
      row("| %s | %d | %llu | %d | %.6f | %.6f | ", name.c_str(), l["m"].get<int>(),
          (unsigned long long)l["N"].get<std::uint64_t>(), l["L"].get<int>(), p, ci);
      if (ref >= 0.0) {
        row("%.6f | %.2f |\n", ref, ci > 0 ? std::abs(p - ref) / ci : 0.0);
      } else {
        md += "- | - |\n";
      }
      csv_rows.push_back("limit," + name + "," + fmt_g17(p) + "," + fmt_g17(ci));
    }
  }
  if (!experiments.empty()) {
    md += "\n## Finite-n experiments\n\n";
    md += "| model | n | m | N | sampler | intransitive | n*tie_rate |\n";
    md += "|---|---|---|---|---|---|---|\n";
    for (const json& e : experiments) {
      const json& cfg = e["config"];
      const json& der = e["derived"];
      const double ntie = der["n_times_tie_rate"].get<double>();
      row("| %s | %d | %d | %llu | %s | ", cfg["model"].get<std::string>().c_str(),
          cfg["n"].get<int>(), cfg["m"].get<int>(),
          (unsigned long long)cfg["N"].get<std::uint64_t>(),
          cfg["sampler"].get<std::string>().c_str());
      if (der.contains("intransitive_fraction")) {
        row("%.6f | %.6f |\n", der["intransitive_fraction"].get<double>(), ntie);
      } else {
        row("- | %.6f |\n", ntie);
      }
      csv_rows.push_back("experiment," + cfg["model"].get<std::string>() + "_n" +
                         std::to_string(cfg["n"].get<int>()) + "," +
                         fmt_g17(der["tie_rate"].get<double>()) + "," + fmt_g17(ntie));
    }
  }
  if (!alphas.empty() && !experiments.empty()) {
    md += "\n## Tie curve vs alpha\n\n";
    md += "| model | n | n*tie_rate | limit | ratio |\n";
    md += "|---|---|---|---|---|\n";
    for (const json& al : alphas) {
      for (const json& e : experiments) {
        const json& cfg = e["config"];
        const double ntie = e["derived"]["n_times_tie_rate"].get<double>();
        const bool balanced = cfg["model"].get<std::string>() != "multiset";
        const double lim = al[balanced ? "alpha_balanced_tie_limit" : "alpha_multiset_tie_limit"]
                               .get<double>();
        row("| %s | %d | %.6f | %.6f | %.3f |\n", cfg["model"].get<std::string>().c_str(),
            cfg["n"].get<int>(), ntie, lim, lim > 0 ? ntie / lim : 0.0);
        csv_rows.push_back("tie_vs_alpha," + cfg["model"].get<std::string>() + "_n" +
                           std::to_string(cfg["n"].get<int>()) + "," + fmt_g17(ntie) + "," +
                           fmt_g17(lim));
      }
    }
  }
  {
    bool header = false;
    for (const json& e : experiments) {
      if (!e.contains("margins")) continue;
      for (const json& l : limits) {
        if (!l.contains("h12_draws")) continue;
        if (!header) {
          md += "\n## Margin KS distances\n\n";
          md += "| model | n | N_margins | N_limit | KS |\n";
          md += "|---|---|---|---|---|\n";
          header = true;
        }
        const json& cfg = e["config"];
        const int n = cfg["n"].get<int>();
        const double c = e["margins"]["scale_c"].get<double>();
        std::vector<double> xs;
        for (const json& dm : e["margins"]["doubled"]) {
          xs.push_back(c * (0.5 * dm.get<double>()) / n);
        }
        std::vector<double> ys = l["h12_draws"].get<std::vector<double>>();
        const double d = ks_distance(xs, ys);
        row("| %s | %d | %zu | %zu | %.5f |\n", cfg["model"].get<std::string>().c_str(), n,
            xs.size(), ys.size(), d);
        csv_rows.push_back("ks," + cfg["model"].get<std::string>() + "_n" + std::to_string(n) +
                           "," + fmt_g17(d) + ",");
      }
    }
  }

  json man = manifest_json("report", json{{"inputs", a.inputs}}, 0, json::object(),
                           a.out.empty() ? std::vector<std::string>{}
                                         : std::vector<std::string>{a.out});
  md += "\n## Manifest\n\n```json\n" + man.dump(2) + "\n```\n";
  if (a.out.empty()) {
    std::fputs(md.c_str(), stdout);
  } else {
    write_text_file(a.out, md);
  }
  if (!a.csv.empty()) {
    std::string csv = "kind,label,value,extra\n";
    for (const std::string& r : csv_rows) csv += r + "\n";
    csv += "manifest," + csv_field(man.dump()) + ",,\n";
    write_text_file(a.csv, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for random intransitive dice"};
  app.require_subcommand(1);

  SpectrumArgs sa;
  auto* sp = app.add_subcommand("spectrum", "build or refresh the spectrum cache");
  sp->add_option("--n-grid", sa.grid, "matrix sizes for the 1/n fit");
  sp->add_option("--L", sa.L, "number of limiting singular values");
  sp->add_option("--cache-dir", sa.cache_dir, "cache directory (DICE_LAB_CACHE overrides)");
  sp->add_option("--out", sa.out, "also write a JSON summary here");

  LimitArgs la;
  auto* lp = app.add_subcommand("limit", "estimate limit-tournament digraph probabilities");
  lp->add_option("--pattern", la.pattern, "named pattern (edge, path2, path3, cycle3, cycle4, cycle5, tournament3_transitive)");
  lp->add_option("--pattern-file", la.pattern_file, "JSON pattern file {\"m\":..,\"edges\":[[j,k],..]}");
  lp->add_flag("--alpha", la.alpha, "estimate the tie constant alpha instead of a pattern");
  lp->add_option("--N", la.N, "Monte Carlo samples");
  lp->add_option("--L", la.L, "series truncation");
  lp->add_option("--seed", la.seed, "RNG seed");
  lp->add_option("--n-grid", la.grid, "cache grid to load");
  lp->add_option("--cache-dir", la.cache_dir, "cache directory (DICE_LAB_CACHE overrides)");
  lp->add_option("--substreams", la.substreams, "RNG substream count");
  lp->add_option("--threads", la.threads, "worker threads, 0 = hardware");
  lp->add_option("--tail-budget", la.tail_budget, "tail variance budget factor");
  lp->add_option("--emit-draws", la.emit_draws, "embed this many H12 draws in the JSON");
  lp->add_option("--out", la.out, "output JSON path (stdout if absent)");

  ExperimentArgs ea;
  auto* ep = app.add_subcommand("experiment", "finite-n tournament experiment");
  ep->add_option("--model", ea.model, "multiset | balanced");
  ep->add_option("--n", ea.n, "number of faces")->required();
  ep->add_option("--m", ea.m, "dice per tournament");
  ep->add_option("--N", ea.N, "tournament count");
  ep->add_option("--seed", ea.seed, "RNG seed");
  ep->add_option("--sampler", ea.sampler,
                 "auto | exact_dp | geometric_rejection | uniform_rejection | mcmc");
  ep->add_option("--margin-cap", ea.margin_cap, "margin samples to keep (m=2)");
  ep->add_option("--substreams", ea.substreams, "RNG substream count");
  ep->add_option("--threads", ea.threads, "worker threads, 0 = hardware");
  ep->add_option("--emit-margins", ea.emit_margins, "margins to embed in the JSON");
  ep->add_option("--out", ea.out, "output JSON path (stdout if absent)");

  ReportArgs ra;
  auto* rp = app.add_subcommand("report", "consolidate result JSONs into markdown/CSV");
  rp->add_option("--inputs", ra.inputs, "result JSON files")->required();
  rp->add_option("--out", ra.out, "markdown output path (stdout if absent)");
  rp->add_option("--csv", ra.csv, "also write a flat CSV here");

  try {
    app.parse(argc, argv);
    if (sp->parsed()) return cmd_spectrum(sa);
    if (lp->parsed()) return cmd_limit(la);
    if (ep->parsed()) return cmd_experiment(ea);
    if (rp->parsed()) return cmd_report(ra);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  } catch (const DiceLabError& e) {
    std::fprintf(stderr, "dicelab: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dicelab: internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
