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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "crstates/crstates.hpp"

namespace crstates::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kInconclusive = 3 };

/// Largest k·m accepted by decompose; the representation of T has k⁴ entries.
inline constexpr Index kMaxDecomposeDim = 256;
inline constexpr Index kMaxDecomposeK = 16;

namespace detail {

inline BipartiteState require_state(const BipartiteMatrix& m, const ToleranceConfig& cfg) {
  return BipartiteState(m, cfg);
}

inline void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& text) {
  if (path) {
    crstates::detail::spit(*path, text);
  } else {
    out << text;
  }
}

}  // namespace detail

/// Runs the command line; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Completely reducible bipartite states: classify, decompose, construct, probe"};
  app.require_subcommand(1);
  app.fallthrough();

  ToleranceConfig cfg;
  std::uint64_t seed = 0;
  app.add_option("--tol-psd", cfg.tol_psd, "relative PSD slack");
  app.add_option("--tol-zero", cfg.tol_zero, "vanishing threshold");
  app.add_option("--tol-gap", cfg.tol_gap, "relative spectral gap threshold");
  app.add_option("--seed", seed, "seed for random constructions and probes");

  // classify
  std::string classify_path;
  auto* classify_cmd = app.add_subcommand("classify", "report the condition flags of a state");
  classify_cmd->add_option("path", classify_path)->required();

  // decompose
  std::string decompose_path;
  std::optional<std::string> decompose_out;
  std::string expect = "cr";
  auto* decompose_cmd = app.add_subcommand("decompose", "decide complete reducibility");
  decompose_cmd->add_option("path", decompose_path)->required();
  decompose_cmd->add_option("--json-out", decompose_out, "write the certificate here");
  decompose_cmd->add_option("--tol", cfg.tol_zero, "alias for --tol-zero");
  decompose_cmd->add_option("--expect", expect, "verdict counted as success")
      ->check(CLI::IsMember({"cr", "not-cr"}));

  // certify
  std::string certify_path;
  std::optional<std::string> certify_w, certify_v, certify_cert;
  auto* certify = app.add_subcommand("certify", "evaluate the pair criterion at (W, V)");
  certify->add_option("path", certify_path)->required();
  certify->add_option("--w", certify_w, "projection file for W");
  certify->add_option("--v", certify_v, "projection file for V");
  certify->add_option("--certificate", certify_cert, "take (W, V) from a certificate witness");

  // construct
  std::string family;
  Index k = 2, m = 0, rank = 0;
  double a = 1, b = 0, c = 0, eps = 0.1;
  std::optional<std::string> construct_out;
  auto* construct = app.add_subcommand("construct", "build a state from a named family");
  construct->add_option("family", family)
      ->required()
      ->check(CLI::IsMember({"werner", "counterexample", "maxent", "diag-pair", "random"}));
  construct->add_option("--k", k, "first factor dimension");
  construct->add_option("--m", m, "second factor dimension (random; defaults to k)");
  construct->add_option("--rank", rank, "rank (random; defaults to k*m)");
  construct->add_option("--a", a, "coefficient of Id (werner)");
  construct->add_option("--b", b, "coefficient of F (werner)");
  construct->add_option("--c", c, "coefficient of uu* (werner)");
  construct->add_option("--eps", eps, "epsilon (counterexample)");
  construct->add_option("-o,--output", construct_out, "output file");

  // shuffle
  std::vector<std::string> shuffle_paths;
  std::optional<std::string> shuffle_out;
  auto* shuffle_cmd = app.add_subcommand("shuffle", "shuffle of bipartite matrices");
  shuffle_cmd->add_option("paths", shuffle_paths)->required();
  shuffle_cmd->add_option("-o,--output", shuffle_out, "output file");

  // transform
  std::string transform_path;
  std::vector<std::string> transform_op;
  std::optional<std::string> transform_out;
  auto* transform = app.add_subcommand(
      "transform", "apply one of: power n | root n | support | ptrace site | pt | realign");
  transform->add_option("path", transform_path)->required();
  transform->add_option("operation", transform_op)->required()->expected(1, 2);
  transform->add_option("-o,--output", transform_out, "output file");

  // probe
  std::vector<std::string> probe_paths;
  int trials = 1000;
  bool bypass = false;
  bool no_trials = false;
  std::optional<std::string> probe_out;
  auto* probe_cmd = app.add_subcommand("probe", "rank-two span probe on a shuffle of partial transposes");
  probe_cmd->add_option("paths", probe_paths)->required();
  probe_cmd->add_option("--trials", trials, "number of random probe points");
  probe_cmd->add_flag("--bypass-precondition", bypass, "allow inputs that are not realignment invariant");
  probe_cmd->add_flag("--summary-only", no_trials, "omit per-trial records");
  probe_cmd->add_option("--json-out", probe_out, "write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    cfg.validate();

    if (*classify_cmd) {
      const BipartiteState s = read_state_file(classify_path, cfg);
      out << dump(to_json(crstates::classify(s, cfg)));
      return kOk;
    }

    if (*decompose_cmd) {
      const BipartiteState s = read_state_file(decompose_path, cfg);
      if (s.dim() > kMaxDecomposeDim || s.k() > kMaxDecomposeK) {
        err << "decompose: k*m = " << s.dim() << " with k = " << s.k()
            << " exceeds the size guard (k*m <= " << kMaxDecomposeDim << ", k <= " << kMaxDecomposeK
            << "); the map representation has k^4 entries\n";
        return kUsage;
      }
      const ReducibilityCertificate cert = decompose(s, cfg);
      detail::emit(out, decompose_out, dump(to_json(cert)));
      if (cert.verdict == Verdict::Inconclusive) return kInconclusive;
      const bool want_cr = expect == "cr";
      const bool is_cr = cert.verdict == Verdict::CompletelyReducible;
      return is_cr == want_cr ? kOk : kNegative;
    }

    if (*certify) {
      const BipartiteState s = read_state_file(certify_path, cfg);
      std::optional<Projection> w, v;
      if (certify_cert) {
        const auto j = crstates::detail::parse_text(crstates::detail::slurp(*certify_cert));
        if (!j.contains("witness") || j["witness"].is_null()) {
          throw FormatError("certificate has no witness");
        }
        w = Projection::from_matrix(matrix_from_json(j["witness"]["w"]));
        v = Projection::from_matrix(matrix_from_json(j["witness"]["v"]));
      } else if (certify_w && certify_v) {
        w = read_projection_file(*certify_w);
        v = read_projection_file(*certify_v);
      } else {
        err << "certify: give --w and --v, or --certificate\n";
        return kUsage;
      }
      const PairCertificate pc = certify_pair(s, *w, *v, cfg);
      out << dump(to_json(pc));
      return pc.holds_a && !pc.holds_b ? kNegative : kOk;
    }

    if (*construct) {
      std::optional<BipartiteState> s;
      if (family == "werner") {
        s = werner(k, a, b, c, cfg);
      } else if (family == "counterexample") {
        const Counterexample ce = counterexample_delta(k, eps);
        err << "counterexample: smallest singular value of G = " << ce.g_min_singular << "\n";
        s = ce.state;
      } else if (family == "maxent") {
        s = maxent(k);
      } else if (family == "diag-pair") {
        s = diag_pair(k);
      } else {
        const Index mm = m > 0 ? m : k;
        s = random_state(k, mm, rank > 0 ? rank : k * mm, seed);
      }
      detail::emit(out, construct_out, state_to_text(*s));
      return kOk;
    }

    if (*shuffle_cmd) {
      std::vector<BipartiteMatrix> mats;
      for (const auto& p : shuffle_paths) mats.push_back(read_matrix_file(p));
      detail::emit(out, shuffle_out, matrix_to_text(shuffle(std::span<const BipartiteMatrix>(mats))));
      return kOk;
    }

    if (*transform) {
      const BipartiteMatrix in = read_matrix_file(transform_path);
      const std::string& op = transform_op[0];
      auto arg = [&]() -> int {
        if (transform_op.size() < 2) throw ParameterError("transform " + op + ": missing argument");
        try {
          return std::stoi(transform_op[1]);
        } catch (const std::exception&) {
          throw ParameterError("transform " + op + ": argument must be an integer");
        }
      };
      auto no_arg = [&]() {
        if (transform_op.size() > 1) throw ParameterError("transform " + op + ": takes no argument");
      };
      std::optional<BipartiteMatrix> result;
      if (op == "power") {
        result = power(BipartiteState(in, cfg), arg(), cfg).as_matrix();
      } else if (op == "root") {
        result = root(BipartiteState(in, cfg), arg(), cfg).as_matrix();
      } else if (op == "support") {
        no_arg();
        result = support_state(BipartiteState(in, cfg), cfg).as_matrix();
      } else if (op == "ptrace") {
        const int site = arg();
        if (site < 0) throw ParameterError("transform ptrace: site must be >= 0");
        result = partial_trace(in, static_cast<std::size_t>(site));
      } else if (op == "pt") {
        no_arg();
        result = partial_transpose(in);
      } else if (op == "realign") {
        no_arg();
        result = realignment(in);
      } else {
        err << "transform: unknown operation '" << op << "'\n";
        return kUsage;
      }
      detail::emit(out, transform_out, matrix_to_text(*result));
      return kOk;
    }

    if (*probe_cmd) {
      std::vector<BipartiteState> states;
      for (const auto& p : probe_paths) states.push_back(read_state_file(p, cfg));
      ProbeOptions opts;
      opts.trials = trials;
      opts.seed = seed;
      opts.bypass_precondition = bypass;
      const ProbeReport r = probe(states, opts, cfg);
      std::ostringstream summary;
      summary << "min=" << r.min_value << " violations=" << r.violations << " trials=" << r.trials
              << " seed=" << r.seed << "\n";
      if (probe_out) {
        crstates::detail::spit(*probe_out, dump(to_json(r, !no_trials)));
        out << summary.str();
      } else {
        out << dump(to_json(r, !no_trials));
        err << summary.str();
      }
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace crstates::cli
