#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpgn/lattice.hpp"
#include "mpgn/tau.hpp"

namespace mpgn {

struct EngineOptions {
  std::uint64_t budget = default_budget();
  double lll_delta = 0.99;
  /// Mutation hook for harness self-tests: the reported lambda_k (1-based
  /// index) is multiplied by `perturb_factor`. Zero disables it.
  int perturb_index = 0;
  double perturb_factor = 1.0;
};

/// Successive minima of the deformed unit cube at one tau, with witnesses.
struct MinimaProfile {
  TauVector tau;
  std::vector<double> lambdas;
  std::vector<LatticePoint> witnesses;
  std::vector<double> L;  // log lambda_k
  std::vector<double> S;  // partial sums of L

  int dim() const { return static_cast<int>(lambdas.size()); }
};

/// Exact successive minima. For each k the basis of D^{-1} B is adapted so
/// that its leading block spans the earlier witnesses, LLL-reduced, and
/// searched by sup-norm branch and bound for the least-gauge point outside
/// that span (ties broken by coeffs_less). Witnesses are sign-normalized so
/// their first nonzero coefficient is positive.
MinimaProfile successive_minima(const Lattice& lattice, const TauVector& tau,
                                const EngineOptions& options = {});

/// Every nonzero lattice point with gauge <= radius, through the same
/// reduction + enumeration route as successive_minima. Sorted like
/// enumerate_points; both signs are returned.
std::vector<LatticePoint> points_in_box(const Lattice& lattice, const TauVector& tau,
                                        double radius, const EngineOptions& options = {});

/// L_v(tau) = max over nonzero v_i of log|v_i| - tau_i. Throws ZeroVector.
double vector_gauge_log(const TauVector& tau, std::span<const double> v);
double vector_gauge_log(const TauVector& tau, const LatticePoint& v);

/// tau(v)_i = log(|v_i| / Pi(v)). Throws DegenerateVector if some v_i = 0.
TauVector tau_of_vector(std::span<const double> v);
TauVector tau_of_vector(const LatticePoint& v);

}  // namespace mpgn
