#pragma once

#include <functional>
#include <string_view>
#include <vector>

namespace etspectra {

enum class BoundSource { CoulombLower, HarmonicUpper, HulthenExact, ExpWellExact, CoulombHalfExact };

std::string_view to_string(BoundSource source);

struct BoundLevel {
  int n = 0;
  double energy = 0.0;
};

struct BoundSpectrum {
  BoundSource source = BoundSource::CoulombLower;
  std::vector<BoundLevel> levels;
  // Which full-line (or half-line) level indices the spectrum says something about.
  std::function<bool(int)> applies;
};

// -2/(n_o + 1)^2 with n_o = 2n + 1: the n-th odd-sector level of -1/|x|.
double coulomb_lower(int n);

// Bound for full-line level `level` of the soft-Coulomb problem, defined on odd levels only.
bool coulomb_lower_applies(int level);
double coulomb_lower_for_level(int level);

// (n + 1/2)/D^{3/2} - 1/D.
double harmonic_upper(int n, double D);

// Half-line spectra, n = 0, 1, ... with n_b = n + 1 the radial-style principal number.
double coulomb_half_exact(int n, double k, double a);
double hulthen_exact(int n, double k, double a);
double exp_well_exact(int n, double k, double a);

int hulthen_bound_count(double k, double a);
int exp_well_bound_count(double k, double a);

struct HulthenBracket {
  double lower = 0.0;  // Coulomb-half, -k/(a x)
  double exact = 0.0;  // Hulthen, -k/(e^{a x} - 1)
  double upper = 0.0;  // exponential well, -k e^{-a x}
};

HulthenBracket hulthen_bracket(int n, double k, double a);

BoundSpectrum coulomb_lower_spectrum(int max_level);
BoundSpectrum harmonic_upper_spectrum(int max_level, double D);
BoundSpectrum hulthen_family_spectrum(BoundSource source, int max_level, double k, double a);

}  // namespace etspectra
