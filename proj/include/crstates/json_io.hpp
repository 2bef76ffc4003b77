// Copyright 2026 The crstates Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "json.hpp"

#include "crstates/constructors.hpp"
#include "crstates/distill_probe.hpp"
#include "crstates/reducibility.hpp"
#include "crstates/superoperator.hpp"

namespace crstates {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Matrix and state files.
//
// {"k": int, "m": int, ["dims": [...], "split": int,] "re": [[...]], "im": [[...]]}
// Numbers are written with 17 significant digits so that reading back is exact.

namespace detail {

inline std::string format_double(double x) {
  if (!std::isfinite(x)) throw FormatError("cannot serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_real_rows(std::ostream& out, const ComplexMatrix& m, bool imag) {
  out << "[";
  for (Index i = 0; i < m.rows(); ++i) {
    out << (i ? ",\n    [" : "\n    [");
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ", ";
      out << format_double(imag ? m(i, j).imag() : m(i, j).real());
    }
    out << "]";
  }
  out << (m.rows() ? "\n  ]" : "]");
}

inline RealMatrix read_real_rows(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw FormatError(std::string("missing array field \"") + key + "\"");
  }
  const auto& rows = j[key];
  const Index n = static_cast<Index>(rows.size());
  Index cols = -1;
  RealMatrix out;
  for (Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw FormatError(std::string("\"") + key + "\" rows must be arrays");
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
      out.resize(n, cols);
    } else if (static_cast<Index>(row.size()) != cols) {
      throw FormatError(std::string("\"") + key + "\" is not rectangular");
    }
    for (Index c = 0; c < cols; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw FormatError(std::string("\"") + key + "\" contains a non-number");
      out(i, c) = v.get<double>();
    }
  }
  if (cols < 0) out.resize(0, 0);
  return out;
}

inline nlohmann::json parse_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
  if (!out) throw FormatError("write failed for " + path);
}

}  // namespace detail

inline void write_matrix_fields(std::ostream& out, const ComplexMatrix& m) {
  out << "  \"re\": ";
  detail::write_real_rows(out, m, false);
  out << ",\n  \"im\": ";
  detail::write_real_rows(out, m, true);
}

inline std::string matrix_to_text(const BipartiteMatrix& m) {
  std::ostringstream out;
  out << "{\n  \"k\": " << m.k() << ",\n  \"m\": " << m.m() << ",\n";
  if (!m.sites().is_plain_bipartite()) {
    out << "  \"dims\": [";
    const auto& dims = m.sites().dims();
    for (std::size_t i = 0; i < dims.size(); ++i) out << (i ? ", " : "") << dims[i];
    out << "],\n  \"split\": " << m.sites().split() << ",\n";
  }
  write_matrix_fields(out, m.matrix());
  out << "\n}\n";
  return out.str();
}

inline std::string state_to_text(const BipartiteState& s) { return matrix_to_text(s.as_matrix()); }

/// Complex square matrix from {"re": ..., "im": ...}; "im" may be omitted.
inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  const RealMatrix re = detail::read_real_rows(j, "re");
  RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
  if (j.contains("im")) im = detail::read_real_rows(j, "im");
  if (im.rows() != re.rows() || im.cols() != re.cols()) {
    throw FormatError("\"re\" and \"im\" have different shapes");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

inline BipartiteMatrix bipartite_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("state file: expected a JSON object");
  for (const char* key : {"k", "m"}) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
      throw FormatError(std::string("state file: missing integer field \"") + key + "\"");
    }
  }
  const Index k = j["k"].get<Index>();
  const Index m = j["m"].get<Index>();
  if (k < 1 || m < 1) throw FormatError("state file: k and m must be >= 1");
  ComplexMatrix mat = matrix_from_json(j);
  if (mat.rows() != mat.cols() || mat.rows() != k * m) {
    throw FormatError("state file: matrix is not " + std::to_string(k * m) + "x" + std::to_string(k * m));
  }
  SitesDescriptor sites = SitesDescriptor::bipartite(k, m);
  if (j.contains("dims")) {
    if (!j["dims"].is_array() || !j.contains("split") || !j["split"].is_number_integer()) {
      throw FormatError("state file: \"dims\" requires an integer \"split\"");
    }
    std::vector<Index> dims;
    for (const auto& d : j["dims"]) {
      if (!d.is_number_integer()) throw FormatError("state file: \"dims\" must hold integers");
      dims.push_back(d.get<Index>());
    }
    try {
      sites = SitesDescriptor(std::move(dims), j["split"].get<std::size_t>());
    } catch (const ParameterError& e) {
      throw FormatError(std::string("state file: ") + e.what());
    }
    if (sites.left_dim() != k || sites.right_dim() != m) {
      throw FormatError("state file: \"dims\" and \"split\" disagree with k and m");
    }
  }
  return {std::move(sites), std::move(mat)};
}

inline BipartiteMatrix read_matrix_file(const std::string& path) {
  return bipartite_matrix_from_json(detail::parse_text(detail::slurp(path)));
}

inline BipartiteState read_state_file(const std::string& path, const ToleranceConfig& cfg = {}) {
  return BipartiteState(read_matrix_file(path), cfg);
}

inline void write_matrix_file(const std::string& path, const BipartiteMatrix& m) {
  detail::spit(path, matrix_to_text(m));
}

inline void write_state_file(const std::string& path, const BipartiteState& s) {
  detail::spit(path, state_to_text(s));
}

/// Projection from a {"re", "im"} file.
inline Projection read_projection_file(const std::string& path) {
  return Projection::from_matrix(matrix_from_json(detail::parse_text(detail::slurp(path))));
}

// ---------------------------------------------------------------------------
// Reports.

inline Json to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array(), c = Json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

inline Json to_json(const ToleranceConfig& cfg) {
  return Json{{"tol_psd", cfg.tol_psd}, {"tol_zero", cfg.tol_zero}, {"tol_gap", cfg.tol_gap}};
}

inline Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

inline Json to_json(const TypeFlags& f) {
  return Json{{"psd", f.psd},
              {"ppt", f.ppt},
              {"spc", optional_bool(f.spc)},
              {"r_invariant", optional_bool(f.r_invariant)},
              {"antisym_supported", optional_bool(f.antisym_supported)},
              {"rank", f.rank}};
}

inline Json to_json(const PairCertificate& c) {
  return Json{{"holds_a", c.holds_a},
              {"holds_b", c.holds_b},
              {"trace_w_vperp", c.trace_w_vperp},
              {"trace_wperp_v", c.trace_wperp_v},
              {"defect_b", c.defect_b}};
}

inline Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json to_json(const ReducibilityCertificate& c) {
  Json blocks = Json::array();
  for (const auto& b : c.blocks) {
    blocks.push_back(Json{{"w", to_json(b.w.matrix())},
                          {"v", to_json(b.v.matrix())},
                          {"w_rank", b.w.rank()},
                          {"v_rank", b.v.rank()},
                          {"spectral_radius", b.spectral_radius}});
  }
  Json witness = nullptr;
  if (c.witness) {
    witness = Json{{"w", to_json(c.witness->w.matrix())},
                   {"v", to_json(c.witness->v.matrix())},
                   {"check", to_json(c.witness->check)}};
  }
  return Json{{"verdict", to_string(c.verdict)},
              {"blocks", std::move(blocks)},
              {"residual_norm", c.residual_norm},
              {"map_norm", c.map_norm},
              {"witness", std::move(witness)},
              {"gap_report", finite_or_null(c.gap_report)},
              {"tolerances", to_json(c.tolerances)}};
}

inline Json to_json(const ProbeReport& r, bool include_trials = true) {
  Json out{{"trials", r.trials},
           {"seed", r.seed},
           {"shuffled_dim", r.shuffled_dim},
           {"min_value", finite_or_null(r.min_value)},
           {"violations", r.violations},
           {"all_compressed_ppt", r.all_compressed_ppt},
           {"all_compressed_r_invariant", r.all_compressed_r_invariant}};
  if (include_trials) {
    Json trials = Json::array();
    for (const auto& t : r.per_trial) {
      trials.push_back(Json{{"seed", t.seed},
                            {"value", t.value},
                            {"compressed_ppt", t.compressed_ppt},
                            {"compressed_r_invariant", t.compressed_r_invariant}});
    }
    out["per_trial"] = std::move(trials);
  }
  return out;
}

inline Json to_json(const SuperOperator& t) {
  Json rep = Json::array();
  for (Index i = 0; i < t.rep.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < t.rep.cols(); ++j) row.push_back(t.rep(i, j));
    rep.push_back(std::move(row));
  }
  Json out{{"k", t.in_dim}};
  if (t.out_dim != t.in_dim) out["m"] = t.out_dim;
  out["rep"] = std::move(rep);
  return out;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace crstates
