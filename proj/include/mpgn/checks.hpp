#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpgn/exponents.hpp"
#include "mpgn/lattice.hpp"
#include "mpgn/minima.hpp"

namespace mpgn {

/// Absolute slack allowed on exact inequalities (float rounding).
inline constexpr double kSlackTolerance = 1e-9;

/// Outcome of one family of inequalities over a sample set. Every
/// sub-inequality keeps its own worst slack, min over samples of
/// (right side - left side); it passes iff that slack is >= -1e-9.
struct CheckReport {
  std::string check_name;
  std::vector<std::string> lattices;
  std::size_t sample_count = 0;
  std::map<std::string, double> worst_slack;
  std::map<std::string, double> constants;
  std::vector<std::string> notes;
  /// Set when a precondition ruled the check out; such a report passes
  /// vacuously and says why in `notes`.
  bool skipped = false;

  bool passed() const;
  /// Keeps the minimum slack seen for `name`.
  void record(const std::string& name, double slack);
  /// Per-sub-inequality minima; sample counts add up.
  void merge(const CheckReport& other);
  std::vector<std::string> failures() const;
};

/// Seeded tau samples with sup-norm uniform in [0, max_norm] and uniformly
/// random direction.
std::vector<TauVector> random_tau_samples(int dim, std::size_t count, double max_norm, std::uint64_t seed);

/// Monotonicity, L_1 <= 0, L_1 >= -|tau|_+ + L_1(0), L_d <= |tau|_- + L_d(0),
/// and 1-Lipschitz continuity between consecutive samples.
CheckReport check_L_properties(const Lattice& lattice, const std::vector<TauVector>& samples,
                               const EngineOptions& engine = {});

/// Minkowski's second theorem and the chains satisfied by the S_k.
CheckReport check_S_properties(const Lattice& lattice, const std::vector<TauVector>& samples,
                               const EngineOptions& engine = {});

/// Two-sided duality bounds between Lambda at tau and Lambda* at -tau.
CheckReport check_duality(const Lattice& lattice, const std::vector<TauVector>& samples,
                          const EngineOptions& engine = {});

/// Exact chains S_k / k nondecreasing and S_k / (d - k) nonincreasing, the
/// duality bounds on S_k - S*_{d-k}, and the composed transference inequality
/// in both directions.
CheckReport check_transference_local(const Lattice& lattice, const std::vector<TauVector>& samples,
                                     const EngineOptions& engine = {});

/// All four pointwise checks, merged.
CheckReport check_all_local(const Lattice& lattice, const std::vector<TauVector>& samples,
                            const EngineOptions& engine = {});

struct RelationOptions {
  /// Estimator tolerance; defaults to the largest trace oscillation among
  /// the three estimate sets.
  std::optional<double> tol;
  /// Add C / f_min to each relation whose finite-tau form carries an
  /// additive constant C (see the report constants).
  bool finite_radius_terms = true;
};

/// Tolerance used when none is given: the largest trace oscillation.
double default_relation_tolerance(const std::vector<const EstimateSet*>& sets);

/// Relations among the exponent estimates of Lambda (gauge f) and of Lambda*
/// (gauges f and f*). Throws MissingEstimates.
CheckReport check_exponent_relations(const EstimateSet& est, const EstimateSet& dual_f,
                                     const EstimateSet& dual_conjugate, const RelationOptions& options = {});

/// Just the split transference chain and its f-conjugate variant.
CheckReport check_split_chain(const EstimateSet& est, const EstimateSet& dual_f,
                              const EstimateSet& dual_conjugate, const RelationOptions& options = {});

}  // namespace mpgn
