#include "mpgn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "mpgn/error.hpp"

namespace mpgn::io {
namespace {

using nlohmann::json;

std::string fmt17(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return fmt17(x);
}

std::string join_coeffs(const Coeffs& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(c[i]);
  }
  return s;
}

void append(std::string& row, const std::string& cell) {
  if (!row.empty()) row += ',';
  row += cell;
}

}  // namespace

std::string lattice_to_json(const Lattice& lattice) {
  const int d = lattice.dim();
  std::string s = "{\n  \"dim\": " + std::to_string(d) + ",\n  \"basis\": [\n";
  for (int i = 0; i < d; ++i) {
    s += "    [";
    for (int j = 0; j < d; ++j) s += (j ? ", " : "") + fmt17(lattice.basis()(i, j));
    s += i + 1 < d ? "],\n" : "]\n";
  }
  s += "  ],\n  \"label\": " + json(lattice.label()).dump() + "\n}\n";
  return s;
}

Lattice lattice_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw BadParams(std::string("lattice file is not valid JSON: ") + e.what());
  }
  try {
    const int d = j.at("dim").get<int>();
    const auto& rows = j.at("basis");
    if (d < 2 || !rows.is_array() || static_cast<int>(rows.size()) != d)
      throw BadParams("lattice basis must have dim rows");
    Matrix b(d, d);
    for (int i = 0; i < d; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != d) throw BadParams("lattice basis must be square");
      for (int k = 0; k < d; ++k) b(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
    return Lattice(b, j.value("label", std::string()));
  } catch (const json::exception& e) {
    throw BadParams(std::string("malformed lattice file: ") + e.what());
  }
}

void save_lattice(const std::string& path, const Lattice& lattice) { write_text(path, lattice_to_json(lattice)); }

Lattice load_lattice(const std::string& path) { return lattice_from_json(read_text(path)); }

std::string profile_csv_header(int dim) {
  std::string h;
  for (const char* name : {"tau", "lambda", "L", "S"})
    for (int i = 1; i <= dim; ++i) append(h, name + ("_" + std::to_string(i)));
  for (int i = 1; i <= dim; ++i) append(h, "witness_" + std::to_string(i));
  return h + "\n";
}

std::string profile_csv_row(const MinimaProfile& p) {
  std::string row;
  for (double t : p.tau.components()) append(row, fmt17(t));
  for (const auto* v : {&p.lambdas, &p.L, &p.S})
    for (double x : *v) append(row, fmt17(x));
  for (const auto& w : p.witnesses) append(row, join_coeffs(w.coeffs));
  return row + "\n";
}

std::string scan_trajectory_csv(const std::vector<ScanSample>& samples, const GaugeFunction& f) {
  std::ostringstream out;
  if (samples.empty()) return {};
  const int d = samples.front().profile.dim();
  std::string h = "radius_index,direction_index,radius,f";
  for (const char* name : {"tau", "L", "psi", "Psi"})
    for (int i = 1; i <= d; ++i) h += std::string(",") + name + "_" + std::to_string(i);
  out << h << "\n";
  for (const auto& s : samples) {
    std::string row = std::to_string(s.radius_index) + "," + std::to_string(s.direction_index);
    append(row, fmt17(s.radius));
    const double fv = f(s.profile.tau);
    append(row, fmt17(fv));
    for (double t : s.profile.tau.components()) append(row, fmt17(t));
    for (double l : s.profile.L) append(row, fmt17(l));
    if (fv > 0.0) {
      PsiValues pv = psi_values(s.profile, f);
      for (double x : pv.psi) append(row, fmt17(x));
      for (double x : pv.Psi) append(row, fmt17(x));
    } else {
      for (int i = 0; i < 2 * d; ++i) row += ',';
    }
    out << row << "\n";
  }
  return out.str();
}

namespace {

json estimate_json(const ExponentEstimate& e) {
  json trace = json::array();
  for (const auto& t : e.trace) trace.push_back({number(t.radius), number(t.value)});
  json wt = json::array();
  for (double x : e.witness_tau) wt.push_back(number(x));
  return json{{"lattice", e.lattice},
              {"f", e.f.name()},
              {"k", e.k},
              {"kind", to_string(e.kind)},
              {"value", number(e.value)},
              {"trace", trace},
              {"witness_tau", wt},
              {"shell_start", number(e.shell_start)},
              {"oscillation", number(e.oscillation())}};
}

}  // namespace

std::string estimate_to_json(const ExponentEstimate& est, int indent) { return estimate_json(est).dump(indent); }

std::string estimates_to_json(const EstimateSet& set, int indent) {
  json arr = json::array();
  for (const auto& e : set.items) arr.push_back(estimate_json(e));
  return arr.dump(indent) + "\n";
}

std::string report_to_json(const CheckReport& r, int indent) {
  json slack = json::object(), constants = json::object();
  for (const auto& [k, v] : r.worst_slack) slack[k] = number(v);
  for (const auto& [k, v] : r.constants) constants[k] = number(v);
  json j{{"check", r.check_name},
         {"status", r.skipped ? "skipped" : r.passed() ? "pass" : "fail"},
         {"worst_slack", slack},
         {"constants", constants},
         {"samples", r.sample_count},
         {"lattices", r.lattices}};
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.passed()) j["failures"] = r.failures();
  return j.dump(indent) + "\n";
}

std::string systems_csv_header(int dim) {
  std::string h = "vectors";
  for (int i = 1; i <= dim; ++i) append(h, "m_" + std::to_string(i));
  return h + ",envelope_volume,minimal,rank\n";
}

std::string systems_csv_row(const VectorSystem& sys, bool minimal) {
  std::string vecs;
  for (std::size_t j = 0; j < sys.points.size(); ++j) vecs += (j ? "|" : "") + join_coeffs(sys.points[j].coeffs);
  std::string row = vecs;
  for (double m : sys.envelope) append(row, fmt17(m));
  append(row, fmt17(sys.envelope_volume()));
  append(row, minimal ? "1" : "0");
  append(row, std::to_string(sys.rank));
  return row + "\n";
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw BadParams("cannot write " + path);
  f << text;
  if (!f) throw BadParams("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw BadParams("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace mpgn::io
