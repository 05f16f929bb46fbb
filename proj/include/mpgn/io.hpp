#pragma once

// File formats: lattice JSON, profile and trajectory CSV, estimates and
// report JSON, systems CSV. Doubles are written so that they read back
// bit for bit; infinities appear in JSON as the strings "inf" / "-inf".

#include <string>
#include <vector>

#include "mpgn/checks.hpp"
#include "mpgn/exponents.hpp"
#include "mpgn/lattice.hpp"
#include "mpgn/minima.hpp"
#include "mpgn/minimal_systems.hpp"

namespace mpgn::io {

/// {"dim": d, "basis": [[...] row-major], "label": "..."}, 17 significant digits.
std::string lattice_to_json(const Lattice& lattice);
/// Throws BadParams on malformed input.
Lattice lattice_from_json(const std::string& text);

void save_lattice(const std::string& path, const Lattice& lattice);
Lattice load_lattice(const std::string& path);

std::string profile_csv_header(int dim);
/// tau_i, lambda_k, L_k, S_k, then witness coefficients joined by ';'.
std::string profile_csv_row(const MinimaProfile& profile);

/// One row per (radius, direction) in canonical order, with tau, L_k and,
/// where f(tau) > 0, psi_k and Psi_k.
std::string scan_trajectory_csv(const std::vector<ScanSample>& samples, const GaugeFunction& f);

std::string estimate_to_json(const ExponentEstimate& est, int indent = -1);
/// Array of estimate objects in (k, kind) order.
std::string estimates_to_json(const EstimateSet& set, int indent = 2);

std::string report_to_json(const CheckReport& report, int indent = 2);

std::string systems_csv_header(int dim);
/// coefficient vectors (';'-joined, '|' between vectors), envelope, volume,
/// minimal flag, rank.
std::string systems_csv_row(const VectorSystem& sys, bool minimal);

/// Writes text to path, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace mpgn::io
