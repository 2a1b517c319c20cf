#include "dicelab/spectrum_cache.hpp"

#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dicelab/error.hpp"
#include "dicelab/io_util.hpp"

namespace dicelab {

namespace {

std::string grid_tag(const std::vector<int>& n_grid) {
  std::string tag;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (i > 0) tag += '-';
    tag += std::to_string(n_grid[i]);
  }
  return tag;
}

}  // namespace

std::string resolve_cache_dir(const std::string& flag_value, const std::string& fallback) {
  const char* env = std::getenv("DICE_LAB_CACHE");
  if (env != nullptr && env[0] != '\0') return env;
  if (!flag_value.empty()) return flag_value;
  return fallback;
}

std::string spectrum_csv_path(const std::string& dir, int n) {
  return dir + "/sigma_n" + std::to_string(n) + ".csv";
}

std::string limit_sidecar_path(const std::string& dir, const std::vector<int>& n_grid, int L) {
  return dir + "/limit_n" + grid_tag(n_grid) + "_L" + std::to_string(L) + ".json";
}

void store_spectrum_csv(const std::string& dir, const SpectrumEstimate& s) {
  ensure_directory(dir);
  std::string text = "n,ell,sigma_n_ell\n";
  for (std::size_t l = 0; l < s.sigmas.size(); ++l) {
    text += std::to_string(s.n);
    text += ',';
    text += std::to_string(l + 1);
    text += ',';
    text += fmt_g17(s.sigmas[l]);
    text += '\n';
  }
  write_text_file(spectrum_csv_path(dir, s.n), text);
}

bool load_spectrum_csv(const std::string& dir, int n, SpectrumEstimate& out) {
  const std::string path = spectrum_csv_path(dir, n);
  if (!file_exists(path)) return false;
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line) || line != "n,ell,sigma_n_ell") {
    fail(Err::IoError, "bad spectrum cache header in " + path);
  }
  out = SpectrumEstimate{};
  out.n = n;
  out.residual_zero_count = n % 2;
  std::size_t expect = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 3) fail(Err::IoError, "bad spectrum cache row in " + path);
    if (std::stoi(fields[0]) != n || std::stoull(fields[1]) != expect) {
      fail(Err::IoError, "out-of-order spectrum cache row in " + path);
    }
    out.sigmas.push_back(parse_double(fields[2]));
    ++expect;
  }
  if (int(out.sigmas.size()) != n / 2) {
    fail(Err::IoError, "spectrum cache row count mismatch in " + path);
  }
  return true;
}

LimitSpectrum cached_limit_spectrum(const std::vector<int>& n_grid, int L,
                                    const std::string& dir) {
  std::vector<SpectrumEstimate> spectra;
  spectra.reserve(n_grid.size());
  for (int n : n_grid) {
    SpectrumEstimate s;
    if (!load_spectrum_csv(dir, n, s)) {
      s = spectrum(build_m_star(n, KernelConstruction::closed_form));
      store_spectrum_csv(dir, s);
    }
    spectra.push_back(std::move(s));
  }
  LimitSpectrum fit = fit_limit_spectrum(n_grid, spectra, L);

  nlohmann::json j;
  j["schema"] = "v1";
  j["kind"] = "limit_spectrum";
  j["n_grid"] = fit.n_grid;
  j["L"] = L;
  auto sig = nlohmann::json::array();
  auto unc = nlohmann::json::array();
  for (int l = 0; l < L; ++l) {
    sig.push_back(fmt_g17(fit.sigmas[std::size_t(l)]));
    unc.push_back(fmt_g17(fit.uncertainty[std::size_t(l)]));
  }
  j["sigma_limit"] = std::move(sig);
  j["uncertainty"] = std::move(unc);
  ensure_directory(dir);
  write_text_file(limit_sidecar_path(dir, n_grid, L), j.dump(2) + "\n");
  return fit;
}

bool load_limit_sidecar(const std::string& dir, const std::vector<int>& n_grid, int L,
                        LimitSpectrum& out) {
  const std::string path = limit_sidecar_path(dir, n_grid, L);
  if (!file_exists(path)) return false;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
    if (j.at("schema").get<std::string>() != "v1" ||
        j.at("kind").get<std::string>() != "limit_spectrum") {
      fail(Err::IoError, "not a v1 limit sidecar: " + path);
    }
    out = LimitSpectrum{};
    out.n_grid = j.at("n_grid").get<std::vector<int>>();
    for (const auto& s : j.at("sigma_limit")) out.sigmas.push_back(parse_double(s));
    for (const auto& s : j.at("uncertainty")) out.uncertainty.push_back(parse_double(s));
  } catch (const nlohmann::json::exception& e) {
    fail(Err::IoError, std::string("limit sidecar parse error: ") + e.what());
  }
  if (out.n_grid != n_grid || int(out.sigmas.size()) != L) {
    fail(Err::IoError, "limit sidecar key mismatch: " + path);
  }
  return true;
}

}  // namespace dicelab
