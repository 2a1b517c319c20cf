#pragma once

#include <string>
#include <vector>

#include "dicelab/spectrum.hpp"

namespace dicelab {

// DICE_LAB_CACHE wins over the flag; fallback when both are empty.
std::string resolve_cache_dir(const std::string& flag_value,
                              const std::string& fallback = "dicelab-cache");

std::string spectrum_csv_path(const std::string& dir, int n);
std::string limit_sidecar_path(const std::string& dir, const std::vector<int>& n_grid, int L);

// CSV "n,ell,sigma_n_ell", one row per ell, 17-digit decimals.
void store_spectrum_csv(const std::string& dir, const SpectrumEstimate& s);
bool load_spectrum_csv(const std::string& dir, int n, SpectrumEstimate& out);

// Per-n spectra from cache when present (eigensolve otherwise), limit fit,
// sidecar JSON {n_grid, L, sigma_limit[], uncertainty[]} written alongside.
LimitSpectrum cached_limit_spectrum(const std::vector<int>& n_grid, int L,
                                    const std::string& dir);

bool load_limit_sidecar(const std::string& dir, const std::vector<int>& n_grid, int L,
                        LimitSpectrum& out);

}  // namespace dicelab
