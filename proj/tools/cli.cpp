// Copyright 2026 The qconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "qconc/entanglement.hpp"
#include "qconc/measurement.hpp"
#include "qconc/parallel.hpp"
#include "qconc/reports.hpp"
#include "qconc/state_factory.hpp"
#include "qconc/verification.hpp"

namespace qconc::cli {

namespace {

using nlohmann::json;

struct UsageError : Error {
  using Error::Error;
};

// What a command produced, before formatting.
struct Output {
  json body = json::object();
  // Tabular CSV form; when empty the body is flattened to field,value rows.
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  // Custom text lines; when empty the body is flattened.
  std::vector<std::string> text_lines;
  int exit_code = kExitOk;
  std::string failure;
};

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string full(double v) { return format_number(v, 17); }
std::string brief(double v) { return format_number(v, 12); }

std::string scalar_text(const json& v, int digits) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>(), digits);
  return v.dump();
}

void flatten(const json& v, const std::string& prefix,
             std::vector<std::pair<std::string, json>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
              out);
    }
  } else if (v.is_array() && !v.empty()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      flatten(v[i], prefix + "." + std::to_string(i), out);
    }
  } else {
    out.emplace_back(prefix, v);
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string render(const RunConfig& cfg, const Output& o) {
  std::ostringstream s;
  const json config = to_json(cfg);
  switch (cfg.format) {
    case Format::json: {
      json doc{{"config", config}};
      for (auto it = o.body.begin(); it != o.body.end(); ++it) {
        doc[it.key()] = it.value();
      }
      s << doc.dump(2) << '\n';
      break;
    }
    case Format::csv: {
      s << "# config " << config.dump() << '\n';
      if (!o.csv_header.empty()) {
        for (std::size_t i = 0; i < o.csv_header.size(); ++i) {
          s << (i ? "," : "") << csv_field(o.csv_header[i]);
        }
        s << '\n';
        for (const auto& row : o.csv_rows) {
          for (std::size_t i = 0; i < row.size(); ++i) {
            s << (i ? "," : "") << csv_field(row[i]);
          }
          s << '\n';
        }
      } else {
        std::vector<std::pair<std::string, json>> flat;
        flatten(o.body, "", flat);
        s << "field,value\n";
        for (const auto& [k, v] : flat) {
          s << csv_field(k) << ',' << csv_field(scalar_text(v, 17)) << '\n';
        }
      }
      break;
    }
    case Format::text: {
      std::vector<std::pair<std::string, json>> flat;
      flatten(config, "config", flat);
      for (const auto& [k, v] : flat) s << k << ": " << scalar_text(v, 12) << '\n';
      if (!o.text_lines.empty()) {
        for (const auto& line : o.text_lines) s << line << '\n';
      } else {
        flat.clear();
        flatten(o.body, "", flat);
        for (const auto& [k, v] : flat) {
          s << k << ": " << scalar_text(v, 12) << '\n';
        }
      }
      break;
    }
  }
  return s.str();
}

// ---------------------------------------------------------------- states

struct LoadedState {
  std::optional<PureState> three_qubit;
  std::optional<DensityMatrix> pair;
};

LoadedState from_pure(const PureState& psi) {
  const std::size_t n = psi.dims().size();
  if (n == 2) return {std::nullopt, DensityMatrix::from_pure(psi)};
  if (n == 3) return {psi, reduce_to_pair(psi)};
  throw UsageError("expected a two- or three-qubit state, got " +
                   std::to_string(n) + " qubits");
}

LoadedState resolve_state(const RunConfig& cfg) {
  const std::string& name = cfg.state;
  if (name == "random") {
    RandomSource rng(cfg.seed, 0);
    Rank2Sample s = random_rank2_state(rng);
    return {std::move(s.parent), std::move(s.rho)};
  }
  constexpr std::string_view kReduced = "_reduced";
  if (name.size() > kReduced.size() && name.ends_with(kReduced)) {
    const auto base = name.substr(0, name.size() - kReduced.size());
    const PureState psi = canonical_state(parse_canonical_state(base));
    if (psi.dims().size() != 3) {
      throw UsageError("only three-qubit states have a reduction: " + name);
    }
    return {std::nullopt, reduce_to_pair(psi)};
  }
  try {
    return from_pure(canonical_state(parse_canonical_state(name)));
  } catch (const UsageError&) {
    throw;
  } catch (const Error&) {
    // Not a canonical name; treat it as a file.
  }
  if (!std::filesystem::exists(name)) {
    throw UsageError("unknown state '" + name +
                     "' (not a canonical name and no such file)");
  }
  const AnyState st = load_state(name);
  if (const auto* psi = std::get_if<PureState>(&st)) return from_pure(*psi);
  const auto& rho = std::get<DensityMatrix>(st);
  if (rho.qubits() != 2) {
    throw UsageError("a density-matrix state must have two qubits");
  }
  return {std::nullopt, rho};
}

const DensityMatrix& require_pair(const LoadedState& s) {
  if (!s.pair) throw UsageError("state has no two-qubit reduction");
  return *s.pair;
}

int rank_of(const DensityMatrix& rho) {
  const RealVector ev = hermitian_eig(rho.op()).values;
  return static_cast<int>((ev.array() > kRankThreshold).count());
}

// Applies the rank <= 2 precondition of the moment-based routes. Returns true
// when the state may use them.
bool check_rank(const RunConfig& cfg, const DensityMatrix& rho, Output& o,
                std::ostream& err) {
  const int rank = rank_of(rho);
  o.body["rank"] = rank;
  if (rank <= 2) return true;
  const std::string msg = "state has rank " + std::to_string(rank) +
                          " > 2; moment formulas do not apply";
  o.body["rank_warning"] = msg;
  if (cfg.strict) {
    o.exit_code = kExitGateFailure;
    o.failure = msg;
  } else {
    err << "warning: " << msg << "; reporting the Wootters value\n";
  }
  return false;
}

SimulationOptions simulation_options(const RunConfig& cfg) {
  SimulationOptions opts;
  opts.scheme = cfg.scheme;
  opts.shots_per_group = cfg.shots;
  return opts;
}

RandomSource sampling_rng(const RunConfig& cfg) {
  return RandomSource(cfg.seed, 1);
}

// --------------------------------------------------------------- commands

Output cmd_verify(const RunConfig& cfg) {
  if (cfg.trials < 50) throw UsageError("verify needs --trials >= 50");
  const VerificationReport report =
      run_verification(cfg.trials, cfg.seed, cfg.tolerance);
  Output o;
  o.body = to_json(report);
  o.csv_header = {"identity",  "status",    "max_residual",
                  "trials",    "tolerance", "chosen_direction"};
  for (const IdentityCheck& c : report.checks) {
    o.csv_rows.push_back({c.identity, std::string(c.status()),
                          full(c.max_residual), std::to_string(c.trials),
                          full(c.tolerance), c.chosen_direction.value_or("")});
    std::string line = std::string(c.passed ? "PASS " : "FAIL ") + c.identity +
                       "  residual " + brief(c.max_residual) + "  tol " +
                       brief(c.tolerance);
    if (c.chosen_direction) line += "  direction " + *c.chosen_direction;
    for (const auto& [k, v] : c.scalar_corrections) {
      line += "  " + k + "=" + brief(v);
    }
    o.text_lines.push_back(std::move(line));
  }
  if (const IdentityCheck* bad = report.first_failure()) {
    o.exit_code = kExitGateFailure;
    o.failure = "verification failed at identity '" + bad->identity +
                "' (residual " + brief(bad->max_residual) + ", tolerance " +
                brief(bad->tolerance) + ")";
  }
  return o;
}

Output cmd_concurrence(const RunConfig& cfg, std::ostream& err) {
  const std::string method = cfg.method.empty() ? "wootters" : cfg.method;
  const LoadedState st = resolve_state(cfg);
  const DensityMatrix& rho = require_pair(st);
  Output o;
  o.body["method"] = method;
  const double wootters = wootters_concurrence(rho);
  if (method == "wootters") {
    o.body["concurrence"] = wootters;
    return o;
  }
  if (!check_rank(cfg, rho, o, err)) {
    o.body["concurrence"] = wootters;
    return o;
  }
  if (method == "moments") {
    const MomentPair m = trace_moments(rho);
    const ClampedRoot tau = tau_from_moments(m);
    const ClampedRoot c = concurrence_from_moments(m);
    o.body["concurrence"] = c.value;
    o.body["t1"] = m.t1;
    o.body["t2"] = m.t2;
    o.body["tau"] = tau.value;
    o.body["clamped_by"] = c.clamped_by;
    return o;
  }
  const EstimateReport r =
      estimate_concurrence(rho, cfg.scheme, cfg.shots, sampling_rng(cfg));
  o.body["concurrence"] = r.mean;
  o.body["exact"] = wootters;
  o.body["estimate"] = to_json(r);
  return o;
}

Output cmd_tangle(const RunConfig& cfg, std::ostream& err) {
  const std::string method = cfg.method.empty() ? "moments" : cfg.method;
  const LoadedState st = resolve_state(cfg);
  Output o;
  o.body["method"] = method;
  if (method == "hyperdet") {
    if (!st.three_qubit) {
      throw UsageError("hyperdet needs a three-qubit pure state");
    }
    o.body["three_tangle"] = three_tangle_hyperdet(*st.three_qubit);
    return o;
  }
  const DensityMatrix& rho = require_pair(st);
  if (!check_rank(cfg, rho, o, err)) {
    o.body["three_tangle"] = nullptr;
    if (o.exit_code == kExitOk) {
      o.exit_code = kExitGateFailure;
      o.failure = "three-tangle from moments needs a rank-2 reduction";
    }
    return o;
  }
  if (method == "moments") {
    o.body["three_tangle"] = three_tangle_from_reduced(rho);
    if (st.three_qubit) {
      o.body["hyperdet"] = three_tangle_hyperdet(*st.three_qubit);
    }
    return o;
  }
  const EstimateReport r =
      estimate_three_tangle(rho, cfg.scheme, cfg.shots, sampling_rng(cfg));
  o.body["three_tangle"] = r.mean;
  o.body["exact"] = three_tangle_from_reduced(rho);
  o.body["estimate"] = to_json(r);
  return o;
}

Output cmd_simulate(const RunConfig& cfg, std::ostream& err) {
  const LoadedState st = resolve_state(cfg);
  const DensityMatrix& rho = require_pair(st);
  Output o;
  if (!check_rank(cfg, rho, o, err)) {
    if (o.exit_code == kExitOk) {
      o.exit_code = kExitGateFailure;
      o.failure = "simulation needs a rank-2 state";
    }
    return o;
  }
  const MeasurementSimulator sim(simulation_options(cfg));
  const SimulationResult res = sim.estimate(rho, sampling_rng(cfg));
  const MomentPair m = trace_moments(rho);
  o.body["exact"] = {{"t1", m.t1},
                     {"t2", m.t2},
                     {"tau", tau_from_moments(m).value},
                     {"concurrence", wootters_concurrence(rho)},
                     {"three_tangle", three_tangle_from_reduced(rho)}};
  o.body["point"] = {{"t1", res.point.t1},
                     {"t2", res.point.t2},
                     {"tau", res.point.tau},
                     {"concurrence", res.point.concurrence},
                     {"three_tangle", res.point.three_tangle}};
  o.body["estimates"] = {{"t1", to_json(res.t1)},
                         {"t2", to_json(res.t2)},
                         {"tau", to_json(res.tau)},
                         {"concurrence", to_json(res.concurrence)},
                         {"three_tangle", to_json(res.three_tangle)}};
  json records = json::array();
  for (const ShotRecord& r : res.records) records.push_back(to_json(r));
  o.body["shot_records"] = records;
  if (!cfg.records.empty()) {
    std::ofstream f(cfg.records);
    if (!f) throw UsageError("cannot write shot records to " + cfg.records);
    write_shot_records_csv(res.records, f);
  }
  return o;
}

struct SweepRow {
  double c_wootters, c_moments, t1, t2, tau, tangle_hyperdet, tangle_moments;
};

Output cmd_sweep(const RunConfig& cfg) {
  if (cfg.trials < 1) throw UsageError("sweep needs --trials >= 1");
  std::vector<SweepRow> rows(static_cast<std::size_t>(cfg.trials));
  parallel_for(rows.size(), [&](std::size_t i) {
    RandomSource rng(cfg.seed, i);
    const Rank2Sample s = random_rank2_state(rng);
    const MomentPair m = trace_moments(s.rho);
    rows[i] = {wootters_concurrence(s.rho),
               concurrence_from_moments(m).value,
               m.t1,
               m.t2,
               tau_from_moments(m).value,
               three_tangle_hyperdet(s.parent),
               three_tangle_from_reduced(s.rho)};
  });

  Output o;
  o.csv_header = {"index",          "stream",         "C_wootters",
                  "C_moments",      "abs_err",        "t1",
                  "t2",             "tau",            "tangle_hyperdet",
                  "tangle_moments", "tangle_abs_err"};
  json data = json::array();
  double max_err = 0.0;
  double max_tangle_err = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    const double err = std::abs(r.c_moments - r.c_wootters);
    const double terr = std::abs(r.tangle_moments - r.tangle_hyperdet);
    max_err = std::max(max_err, err);
    max_tangle_err = std::max(max_tangle_err, terr);
    o.csv_rows.push_back({std::to_string(i), std::to_string(i),
                          full(r.c_wootters), full(r.c_moments), full(err),
                          full(r.t1), full(r.t2), full(r.tau),
                          full(r.tangle_hyperdet), full(r.tangle_moments),
                          full(terr)});
    data.push_back({{"index", i},
                    {"stream", i},
                    {"C_wootters", r.c_wootters},
                    {"C_moments", r.c_moments},
                    {"abs_err", err},
                    {"t1", r.t1},
                    {"t2", r.t2},
                    {"tau", r.tau},
                    {"tangle_hyperdet", r.tangle_hyperdet},
                    {"tangle_moments", r.tangle_moments},
                    {"tangle_abs_err", terr}});
  }
  o.csv_rows.push_back({"summary", "", "", "", full(max_err), "", "", "", "",
                        "", full(max_tangle_err)});
  o.body["rows"] = data;
  o.body["summary"] = {{"count", rows.size()},
                       {"max_abs_err", max_err},
                       {"max_tangle_abs_err", max_tangle_err}};
  o.text_lines = {"count: " + std::to_string(rows.size()),
                  "max_abs_err: " + brief(max_err),
                  "max_tangle_abs_err: " + brief(max_tangle_err)};
  if (max_err >= cfg.tolerance || max_tangle_err >= cfg.tolerance) {
    o.exit_code = kExitGateFailure;
    o.failure = "oracle disagreement above tolerance (C " + brief(max_err) +
                ", tangle " + brief(max_tangle_err) + ")";
  }
  return o;
}

}  // namespace

std::string_view to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::text: return "text";
  }
  return "json";
}

json to_json(const RunConfig& cfg) {
  return {{"command", cfg.command},
          {"seed", cfg.seed},
          {"tolerance", cfg.tolerance},
          {"trials", cfg.trials},
          {"shots", cfg.shots},
          {"scheme", to_string(cfg.scheme)},
          {"state", cfg.state},
          {"method", cfg.method},
          {"format", to_string(cfg.format)},
          {"out", cfg.out},
          {"records", cfg.records},
          {"strict", cfg.strict},
          {"rng_algorithm", RandomSource::kAlgorithm}};
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Concurrence and three-tangle from multi-copy observables"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string scheme = "local6";
  std::string format;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    sub->add_option("--tol", cfg.tolerance, "Tolerance")
        ->capture_default_str();
    sub->add_option("--trials", cfg.trials, "Number of random trials")
        ->capture_default_str();
    sub->add_option("--shots", cfg.shots, "Shots per measurement group")
        ->capture_default_str();
    sub->add_option("--scheme", scheme, "Measurement scheme")
        ->check(CLI::IsMember({"global", "local6"}))
        ->capture_default_str();
    sub->add_option("--state", cfg.state,
                    "Canonical name, <name>_reduced, random, or a state file")
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag("--strict", cfg.strict,
                  "Fail instead of warning on rank > 2 states");
  };

  CLI::App* verify = app.add_subcommand("verify", "Check operator identities");
  CLI::App* conc = app.add_subcommand("concurrence", "Two-qubit concurrence");
  CLI::App* tangle = app.add_subcommand("tangle", "Three-tangle");
  CLI::App* simulate =
      app.add_subcommand("simulate", "Simulated measurement of all groups");
  CLI::App* sweep =
      app.add_subcommand("sweep", "Moment formulas against oracles, as CSV");
  for (CLI::App* sub : {verify, conc, tangle, simulate, sweep}) add_common(sub);
  conc->add_option("--method", cfg.method, "wootters | moments | sampled")
      ->check(CLI::IsMember({"wootters", "moments", "sampled"}));
  tangle->add_option("--method", cfg.method, "hyperdet | moments | sampled")
      ->check(CLI::IsMember({"hyperdet", "moments", "sampled"}));
  simulate->add_option("--records", cfg.records,
                       "Write shot records as CSV to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  cfg.scheme = parse_scheme(scheme);
  if (format.empty()) format = cfg.command == "sweep" ? "csv" : "json";
  cfg.format = format == "csv"    ? Format::csv
               : format == "text" ? Format::text
                                  : Format::json;

  Output o;
  try {
    if (cfg.command == "verify") {
      o = cmd_verify(cfg);
    } else if (cfg.command == "concurrence") {
      o = cmd_concurrence(cfg, err);
    } else if (cfg.command == "tangle") {
      o = cmd_tangle(cfg, err);
    } else if (cfg.command == "simulate") {
      o = cmd_simulate(cfg, err);
    } else {
      o = cmd_sweep(cfg);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string text = render(cfg, o);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f || !(f << text)) {
      err << "error: cannot write " << cfg.out << '\n';
      return kExitUsage;
    }
  }
  if (!o.failure.empty()) err << o.failure << '\n';
  return o.exit_code;
}

}  // namespace qconc::cli
