#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpgn/extended_real.hpp"
#include "mpgn/gauge.hpp"
#include "mpgn/lattice.hpp"
#include "mpgn/minima.hpp"

namespace mpgn {

struct PsiValues {
  std::vector<double> psi;  // L_k / f(tau)
  std::vector<double> Psi;  // partial sums of psi
};

/// Throws ZeroGauge when f(tau) = 0.
PsiValues psi_values(const Lattice& lattice, const TauVector& tau, const GaugeFunction& f,
                     const EngineOptions& engine = {});
PsiValues psi_values(const MinimaProfile& profile, const GaugeFunction& f);

struct RadiusSchedule {
  double r0 = 1.5;
  double ratio = 1.148698354997035;  // 2^(1/5)
  int count = 16;

  std::vector<double> radii() const;
  /// Parses "r0:ratio:count".
  static RadiusSchedule parse(const std::string& text);
};

/// Unit directions (sup-norm 1) on the trace-zero hyperplane: `count`
/// Halton-sequence directions and their negatives, plus every axis pair
/// e_i - e_j. The set is closed under negation.
std::vector<TauVector> scan_directions(int dim, int count);

struct ScanConfig {
  std::vector<TauVector> directions;
  RadiusSchedule schedule;
  double shell_fraction = 0.5;
  EngineOptions engine;
  unsigned threads = 0;  // 0: hardware concurrency

  static ScanConfig standard(int dim, int direction_count = 24, RadiusSchedule schedule = {});
  /// Throws BadParams.
  void validate(int dim) const;
  /// Index of the first radius inside the asymptotic shell.
  int shell_start_index() const;
};

/// Minima profiles at tau = r * u for every (radius, direction), in
/// canonical order: radius-major, then direction index.
struct ScanSample {
  int radius_index = 0;
  int direction_index = 0;
  double radius = 0.0;
  MinimaProfile profile;
};

std::vector<ScanSample> scan_profiles(const Lattice& lattice, const ScanConfig& cfg);

enum class ExponentKind { PsiLower, PsiUpper, PsiSumLower, PsiSumUpper };

/// "psi_lower", "psi_upper", "Psi_lower", "Psi_upper".
std::string to_string(ExponentKind kind);
bool is_lower(ExponentKind kind);

struct TracePoint {
  double radius;
  double value;
};

/// A truncated liminf / limsup. For a lower estimate the trace holds, per
/// radius r, the infimum over all samples of radius >= r (the tail
/// infimum), so it is nondecreasing; the value is the trace entry at the
/// start of the asymptotic shell. Upper estimates are symmetric.
struct ExponentEstimate {
  ExponentKind kind = ExponentKind::PsiLower;
  int k = 1;
  GaugeFunction f;
  std::string lattice;
  double value = 0.0;
  std::vector<TracePoint> trace;
  std::vector<double> witness_tau;
  double shell_start = 0.0;

  /// Spread of trace values at radii >= shell_start.
  double oscillation() const;
};

/// All estimates for one lattice and gauge: four kinds for each k.
struct EstimateSet {
  std::string lattice;
  GaugeFunction f;
  int dim = 0;
  /// Least f(tau) over the asymptotic shell; finite-radius error terms of
  /// the exponent relations scale like 1 / shell_f_min.
  double shell_f_min = 0.0;
  std::vector<ExponentEstimate> items;

  /// Throws MissingEstimates.
  const ExponentEstimate& get(ExponentKind kind, int k) const;
  double value(ExponentKind kind, int k) const { return get(kind, k).value; }
  double max_oscillation() const;
};

EstimateSet estimates_from_scan(const std::vector<ScanSample>& samples, const std::string& lattice,
                                const GaugeFunction& f, const ScanConfig& cfg);

/// Ray scan. Throws InsufficientSamples if the shell holds fewer than 10
/// samples.
EstimateSet estimate_exponents(const Lattice& lattice, const GaugeFunction& f, const ScanConfig& cfg);

struct VectorScanOptions {
  /// Spacing of the logarithmic box grid covering the hyperbolic region.
  double grid_step = 0.5;
  int bins = 8;
  /// Node budget per box. A box over budget ("dense": the lattice has many
  /// points near a coordinate hyperplane) is sampled by the successive-minima
  /// witnesses at its own tau instead of in full.
  std::uint64_t box_budget = 20000;
  EngineOptions engine;
};

struct ProductScan {
  std::vector<LatticePoint> points;
  int boxes = 0;
  int dense_boxes = 0;
};

/// Lattice points v with sqrt(N) <= |v| <= N and Pi(v) <= 1, found by
/// covering that region with boxes of volume at most 2^d e^{d * grid_step}.
/// Only these points can push the exponent estimates below 0 (resp. above 0
/// for omega). Canonical sign, sorted by |v| then coefficients.
ProductScan small_product_points(const Lattice& lattice, double norm_bound,
                                               const VectorScanOptions& options = {});

/// inf of log Pi(v) / (log|v| - log Pi(v)) over the sample points; points
/// with Pi(v) = 0 contribute -1. Kind Psi_lower, k = 1, f = sup-plus. The
/// trace is the tail infimum over geometric |v| bins.
ExponentEstimate estimate_psi1_vector_scan(const Lattice& lattice, double norm_bound,
                                           const VectorScanOptions& options = {});

/// sup of log(1/Pi(v)) / log|v| over the same sample points; +inf if some
/// sample has Pi(v) = 0.
ExtendedReal estimate_omega(const Lattice& lattice, double norm_bound,
                            const VectorScanOptions& options = {});

enum class ConversionDirection { OmegaToPsi, PsiToOmega };

/// omega <-> lower Psi_1 for f = sup-plus, through
/// 1/omega + 1/Psi_1 + 1 = 0. Throws OutOfDomain.
ExtendedReal omega_psi_convert(ExtendedReal x, ConversionDirection direction);

}  // namespace mpgn
