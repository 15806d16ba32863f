// Copyright 2026 The ipmc Authors
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

#include "ipmc/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ipmc/error.hpp"
#include "ipmc/oracle.hpp"
#include "ipmc/rng.hpp"

namespace ipmc {
namespace {

constexpr double kRegimeDistance = 1e-6;
constexpr double kBoundSlack = 1e-10;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  T v{};
  const std::string t = trim(text);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  require(res.ec == std::errc() && res.ptr == t.data() + t.size() && !t.empty(), ErrorCode::kParse,
          "bad value '" + text + "' for " + what);
  return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  fail(ErrorCode::kParse, "bad boolean '" + text + "' for " + what);
}

bool use_oracle(const RunConfig& cfg) {
  if (cfg.oracle == "off") return false;
  const bool fits = cfg.qubits() <= cfg.statevector_cap;
  if (cfg.oracle == "on") {
    require(fits, ErrorCode::kResource,
            "oracle requested for " + std::to_string(cfg.qubits()) + " qubits, beyond the cap of " +
                std::to_string(cfg.statevector_cap));
    return true;
  }
  return fits;
}

unsigned clamp_threads(std::size_t wanted) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::clamp<std::size_t>(wanted, 1, hw));
}

void audit_step(BoundAudit& audit, const StepTrace& tr, bool stabilize) {
  if (!tr.compressed || !tr.truncated) return;
  if (!(tr.canonical_distance_before < kRegimeDistance)) {
    ++audit.out_of_regime;
    return;
  }
  ++audit.checked;
  const TruncationReport& r = tr.report;
  const double n = tr.norm_n / tr.norm_pre;
  bool ok = n >= r.norm_lb - kBoundSlack && n <= r.norm_ub + kBoundSlack;
  if (stabilize) {
    const double ns = tr.norm_nstar / tr.norm_pre;
    ok = ok && ns >= r.stabilized_lb - kBoundSlack && ns <= r.stabilized_ub + kBoundSlack;
  }
  if (!ok) ++audit.violations;
}

}  // namespace

// ---------------------------------------------------------------- config

std::size_t RunConfig::qubits() const {
  if (family == "rqc2d" || family == "pqc2d") return lx * ly;
  return n;
}

void RunConfig::validate() const {
  require(chi >= 1, ErrorCode::kArgument, "chi must be >= 1");
  require(!seeds.empty(), ErrorCode::kArgument, "at least one seed is required");
  require(threads >= 1, ErrorCode::kArgument, "threads must be >= 1");
  require(engine == "ptebd" || engine == "sequential" || engine == "both", ErrorCode::kArgument,
          "engine must be ptebd, sequential or both");
  require(oracle == "auto" || oracle == "on" || oracle == "off", ErrorCode::kArgument,
          "oracle must be auto, on or off");
  if (family == "rqc1d") {
    require(n % 2 == 1 && n >= 3, ErrorCode::kArgument, "rqc1d needs an odd n >= 3");
    require(depth % 2 == 0, ErrorCode::kArgument, "rqc1d needs an even depth");
  } else if (family == "pqc1d") {
    require(n % 2 == 0 && n >= 2, ErrorCode::kArgument, "pqc1d needs an even n");
    require(depth % 2 == 0, ErrorCode::kArgument, "pqc1d needs an even depth");
  } else if (family == "rqc2d") {
    require(lx >= 1 && ly >= 1 && lx * ly >= 2, ErrorCode::kArgument, "rqc2d needs at least two qubits");
    require(depth % 4 == 0, ErrorCode::kArgument, "rqc2d depth must be a multiple of 4");
  } else if (family == "pqc2d") {
    require(lx >= 1 && ly >= 2 && ly % 2 == 0, ErrorCode::kArgument, "pqc2d needs an even ly");
    require(depth % 4 == 0 && depth >= 4, ErrorCode::kArgument, "pqc2d depth must be a positive multiple of 4");
  } else if (family == "qft") {
    require(n >= 2, ErrorCode::kArgument, "qft runs need n >= 2");
  } else if (family == "ptsu-convergence") {
    require(n >= 2 && chi >= 2, ErrorCode::kArgument, "ptsu-convergence needs n >= 2 and chi >= 2");
  } else {
    fail(ErrorCode::kArgument, "unknown family '" + family + "'");
  }
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  const std::string t = trim(text);
  const auto dots = t.find("..");
  if (dots != std::string::npos) {
    const auto lo = parse_number<std::uint64_t>(t.substr(0, dots), "seeds");
    const auto hi = parse_number<std::uint64_t>(t.substr(dots + 2), "seeds");
    require(lo <= hi && hi - lo < 1000000, ErrorCode::kParse, "bad seed range '" + text + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<std::uint64_t>(item, "seeds"));
  require(!out.empty(), ErrorCode::kParse, "empty seed list");
  return out;
}

void set_config_value(RunConfig& cfg, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in), value = trim(value_in);
  if (key == "family") cfg.family = value;
  else if (key == "n") cfg.n = parse_number<std::size_t>(value, key);
  else if (key == "lx") cfg.lx = parse_number<std::size_t>(value, key);
  else if (key == "ly") cfg.ly = parse_number<std::size_t>(value, key);
  else if (key == "depth") cfg.depth = parse_number<std::size_t>(value, key);
  else if (key == "chi") cfg.chi = parse_number<std::size_t>(value, key);
  else if (key == "g") cfg.g = parse_number<std::size_t>(value, key);
  else if (key == "engine") cfg.engine = value;
  else if (key == "stabilize") cfg.stabilize = parse_bool(value, key);
  else if (key == "seeds") cfg.seeds = parse_seed_list(value);
  else if (key == "threads") cfg.threads = parse_number<unsigned>(value, key);
  else if (key == "output") cfg.output = value;
  else if (key == "statevector_cap") cfg.statevector_cap = parse_number<std::size_t>(value, key);
  else if (key == "oracle") cfg.oracle = value;
  else if (key == "parity") cfg.parity = parse_bool(value, key);
  else if (key == "chi0") cfg.chi0 = parse_number<std::size_t>(value, key);
  else if (key == "instances") cfg.instances = parse_number<std::size_t>(value, key);
  else if (key == "steps") cfg.steps = parse_number<std::size_t>(value, key);
  else fail(ErrorCode::kParse, "unknown config key '" + key + "'");
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    require(eq != std::string::npos, ErrorCode::kParse,
            "config line " + std::to_string(lineno) + ": expected key=value");
    try {
      set_config_value(cfg, t.substr(0, eq), t.substr(eq + 1));
    } catch (const Error& e) {
      fail(ErrorCode::kParse, "config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open config " + path);
  return parse_config(in);
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  std::string seeds;
  for (std::size_t i = 0; i < c.seeds.size(); ++i) seeds += (i ? "," : "") + std::to_string(c.seeds[i]);
  return {{"family", c.family},
          {"n", std::to_string(c.n)},
          {"lx", std::to_string(c.lx)},
          {"ly", std::to_string(c.ly)},
          {"depth", std::to_string(c.depth)},
          {"chi", std::to_string(c.chi)},
          {"g", std::to_string(c.g)},
          {"engine", c.engine},
          {"stabilize", c.stabilize ? "true" : "false"},
          {"seeds", seeds},
          {"threads", std::to_string(c.threads)},
          {"output", c.output},
          {"statevector_cap", std::to_string(c.statevector_cap)},
          {"oracle", c.oracle},
          {"parity", c.parity ? "true" : "false"},
          {"chi0", std::to_string(c.chi0)},
          {"instances", std::to_string(c.instances)},
          {"steps", std::to_string(c.steps)}};
}

// ---------------------------------------------------------------- CSV

std::string format_record(const ExperimentRecord& r) {
  std::string s;
  s += std::to_string(r.seed) + ',' + r.engine + ',' + std::to_string(r.layer) + ',' +
       std::to_string(r.compiled_layer) + ',' + fmt(r.norm_n) + ',' + fmt(r.norm_nstar) + ',' +
       fmt(r.eps_global) + ',' + fmt(r.fidelity_lb_tight) + ',' + fmt(r.fidelity_lb_loose) + ',' +
       fmt(r.canonical_distance) + ',' + (r.fidelity_vs_oracle ? fmt(*r.fidelity_vs_oracle) : "") + ',' +
       std::to_string(r.elapsed_ns) + ',' + std::to_string(r.parallel_rounds);
  return s;
}

void write_csv(std::ostream& out, const RunConfig& cfg, const std::vector<ExperimentRecord>& rows) {
  for (const auto& [k, v] : config_entries(cfg)) out << "# " << k << '=' << v << '\n';
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << format_record(r) << '\n';
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::vector<ExperimentRecord> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto where = [&](const std::string& what) { return "line " + std::to_string(lineno) + ": " + what; };
    if (!header) {
      require(line == kCsvHeader, ErrorCode::kParse, where("unexpected CSV header"));
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.push_back("");
    require(f.size() == 13, ErrorCode::kParse, where("expected 13 fields, got " + std::to_string(f.size())));
    try {
      ExperimentRecord r;
      r.seed = parse_number<std::uint64_t>(f[0], "seed");
      r.engine = f[1];
      require(!r.engine.empty(), ErrorCode::kParse, "empty engine");
      r.layer = parse_number<std::size_t>(f[2], "layer");
      r.compiled_layer = parse_number<std::size_t>(f[3], "compiled_layer");
      r.norm_n = parse_number<double>(f[4], "norm_n");
      r.norm_nstar = parse_number<double>(f[5], "norm_nstar");
      r.eps_global = parse_number<double>(f[6], "eps_global");
      r.fidelity_lb_tight = parse_number<double>(f[7], "fidelity_lb_tight");
      r.fidelity_lb_loose = parse_number<double>(f[8], "fidelity_lb_loose");
      r.canonical_distance = parse_number<double>(f[9], "canonical_distance");
      if (!trim(f[10]).empty()) r.fidelity_vs_oracle = parse_number<double>(f[10], "fidelity_vs_oracle");
      r.elapsed_ns = parse_number<std::int64_t>(f[11], "elapsed_ns");
      r.parallel_rounds = parse_number<std::size_t>(f[12], "parallel_rounds");
      rows.push_back(std::move(r));
    } catch (const Error& e) {
      fail(ErrorCode::kParse, where(e.what()));
    }
  }
  return rows;
}

// ---------------------------------------------------------------- summary

const EngineAggregate* Summary::engine(const std::string& name) const {
  for (const auto& e : engines)
    if (e.engine == name) return &e;
  return nullptr;
}

Summary summarize(const std::vector<ExperimentRecord>& rows) {
  Summary s;
  std::map<std::string, std::vector<const ExperimentRecord*>> by_engine;
  for (const auto& r : rows) by_engine[r.engine].push_back(&r);

  for (const auto& [name, recs] : by_engine) {
    EngineAggregate ea;
    ea.engine = name;
    ea.rows = recs.size();
    // Final row per seed: largest compiled layer.
    std::map<std::uint64_t, const ExperimentRecord*> last;
    std::map<std::uint64_t, double> total_time;
    double t_sum = 0.0;
    std::size_t t_count = 0;
    for (const ExperimentRecord* r : recs) {
      auto& slot = last[r->seed];
      if (!slot || r->compiled_layer >= slot->compiled_layer) slot = r;
      total_time[r->seed] += static_cast<double>(r->elapsed_ns);
      if (r->compiled_layer > 0) {
        t_sum += static_cast<double>(r->elapsed_ns);
        ++t_count;
      }
    }
    ea.seeds = last.size();
    ea.elapsed_ns_per_layer = t_count ? t_sum / static_cast<double>(t_count) : 0.0;
    double tt = 0.0;
    for (const auto& [seed, t] : total_time) tt += t;
    ea.elapsed_ns_total = ea.seeds ? tt / static_cast<double>(ea.seeds) : 0.0;
    double f_sum = 0.0;
    ea.final_fidelity_min = std::numeric_limits<double>::infinity();
    ea.final_fidelity_max = -std::numeric_limits<double>::infinity();
    for (const auto& [seed, r] : last) {
      if (!r->fidelity_vs_oracle) continue;
      const double f = *r->fidelity_vs_oracle;
      f_sum += f;
      ++ea.final_fidelity_count;
      ea.final_fidelity_min = std::min(ea.final_fidelity_min, f);
      ea.final_fidelity_max = std::max(ea.final_fidelity_max, f);
    }
    if (ea.final_fidelity_count) {
      ea.final_fidelity_mean = f_sum / static_cast<double>(ea.final_fidelity_count);
    } else {
      ea.final_fidelity_min = ea.final_fidelity_max = 0.0;
    }
    s.engines.push_back(ea);

    std::map<std::size_t, std::vector<const ExperimentRecord*>> by_layer;
    for (const ExperimentRecord* r : recs) by_layer[r->compiled_layer].push_back(r);
    for (const auto& [layer, lr] : by_layer) {
      LayerAggregate la;
      la.engine = name;
      la.compiled_layer = layer;
      la.count = lr.size();
      la.fidelity_min = std::numeric_limits<double>::infinity();
      la.fidelity_max = -std::numeric_limits<double>::infinity();
      double fs = 0.0, ns = 0.0, es = 0.0, ts = 0.0;
      for (const ExperimentRecord* r : lr) {
        ns += r->norm_nstar;
        es += r->eps_global;
        ts += static_cast<double>(r->elapsed_ns);
        if (r->fidelity_vs_oracle) {
          const double f = *r->fidelity_vs_oracle;
          fs += f;
          ++la.fidelity_count;
          la.fidelity_min = std::min(la.fidelity_min, f);
          la.fidelity_max = std::max(la.fidelity_max, f);
        }
      }
      const double c = static_cast<double>(la.count);
      la.norm_nstar_mean = ns / c;
      la.eps_mean = es / c;
      la.elapsed_ns_mean = ts / c;
      if (la.fidelity_count) la.fidelity_mean = fs / static_cast<double>(la.fidelity_count);
      else la.fidelity_min = la.fidelity_max = 0.0;
      s.layers.push_back(la);
    }
  }
  return s;
}

std::string Summary::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["engines"] = ordered_json::array();
  for (const auto& e : engines) {
    ordered_json je;
    je["engine"] = e.engine;
    je["seeds"] = e.seeds;
    je["rows"] = e.rows;
    if (e.final_fidelity_count) {
      je["final_fidelity_mean"] = e.final_fidelity_mean;
      je["final_fidelity_min"] = e.final_fidelity_min;
      je["final_fidelity_max"] = e.final_fidelity_max;
    }
    je["elapsed_ns_per_layer"] = e.elapsed_ns_per_layer;
    je["elapsed_ns_total"] = e.elapsed_ns_total;
    j["engines"].push_back(je);
  }
  j["layers"] = ordered_json::array();
  for (const auto& l : layers) {
    ordered_json jl;
    jl["engine"] = l.engine;
    jl["compiled_layer"] = l.compiled_layer;
    jl["count"] = l.count;
    if (l.fidelity_count) {
      jl["fidelity_mean"] = l.fidelity_mean;
      jl["fidelity_min"] = l.fidelity_min;
      jl["fidelity_max"] = l.fidelity_max;
    }
    jl["norm_nstar_mean"] = std::isfinite(l.norm_nstar_mean) ? ordered_json(l.norm_nstar_mean) : ordered_json();
    jl["eps_mean"] = l.eps_mean;
    jl["elapsed_ns_mean"] = l.elapsed_ns_mean;
    j["layers"].push_back(jl);
  }
  j["bound_audit"] = {{"checked", audit.checked},
                      {"violations", audit.violations},
                      {"out_of_regime", audit.out_of_regime}};
  return j.dump(2);
}

Summary report_summary(const std::string& csv_path) {
  std::ifstream in(csv_path);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + csv_path);
  return summarize(read_csv(in));
}

// ---------------------------------------------------------------- runs

CompiledCircuit build_circuit(const RunConfig& cfg, std::uint64_t seed) {
  if (cfg.family == "rqc1d") return compile_1d(rqc_1d(cfg.n, cfg.depth, seed));
  if (cfg.family == "pqc1d") return compile_1d(pqc_1d(cfg.n, cfg.depth, seed));
  if (cfg.family == "rqc2d") return recompile_2d(rqc_2d(cfg.lx, cfg.ly, cfg.depth, seed), snake_path(cfg.lx, cfg.ly));
  if (cfg.family == "pqc2d") return recompile_2d(pqc_2d(cfg.lx, cfg.ly, cfg.depth, seed), snake_path(cfg.lx, cfg.ly));
  if (cfg.family == "qft") return qft_circuit(cfg.n);
  fail(ErrorCode::kArgument, "family '" + cfg.family + "' has no circuit");
}

VidalMps initial_state(const RunConfig& cfg, std::uint64_t seed) {
  if (cfg.family == "qft") {
    const std::uint64_t s = Rng::stream(seed, {kTagInstance, 0}).next_u64();
    return random_mps(cfg.n, cfg.chi0, s);
  }
  return product_state(std::vector<int>(cfg.qubits(), 0));
}

ExperimentResult run_experiment(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  if (cfg.parity) {
    cfg.seeds.resize(1);
    cfg.engine = "both";
  }
  cfg.validate();
  require(cfg.family != "ptsu-convergence", ErrorCode::kArgument,
          "ptsu-convergence has its own driver (ptsu_convergence)");
  const bool oracle = use_oracle(cfg);
  const bool run_par = cfg.engine != "sequential";
  const bool run_seq = cfg.engine != "ptebd";
  RoundExecutor exec(cfg.threads);
  EngineOptions opts;
  opts.executor = &exec;
  opts.stabilize = cfg.stabilize;

  ExperimentResult result;
  for (std::uint64_t seed : cfg.seeds) {
    const CompiledCircuit cc = build_circuit(cfg, seed);
    result.compiled_depth = cc.compiled_depth;
    result.physical_depth = cc.provenance.empty() ? 0 : cc.provenance.back() + 1;
    const VidalMps init = initial_state(cfg, seed);
    VidalMps par = init, seq = init;
    std::optional<Statevector> exact;
    if (oracle) exact = to_statevector(init, cfg.statevector_cap);
    double lb_tight[2] = {1.0, 1.0}, lb_loose[2] = {1.0, 1.0};

    for (std::size_t k = 0; k < cc.circuit.layers.size(); ++k) {
      const Layer& layer = cc.circuit.layers[k];
      if (exact) {
        for (const Gate& gt : layer.gates)
          if (!gt.is_pair()) apply_gate(*exact, gt);
        for (const Gate& gt : layer.gates)
          if (gt.is_pair()) apply_gate(*exact, gt);
      }
      for (int e = 0; e < 2; ++e) {
        if ((e == 0 && !run_par) || (e == 1 && !run_seq)) continue;
        VidalMps& st = e == 0 ? par : seq;
        const StepTrace tr = e == 0 ? ptebd_apply_layer(st, layer, cfg.chi, cfg.g, opts)
                                    : sequential_apply_layer(st, layer, cfg.chi, opts);
        if (e == 0) audit_step(result.summary.audit, tr, cfg.stabilize);
        lb_tight[e] *= std::max(0.0, tr.report.fidelity_lb_tight);
        lb_loose[e] *= std::max(0.0, tr.report.fidelity_lb_loose);
        ExperimentRecord r;
        r.seed = seed;
        r.engine = e == 0 ? "ptebd" : "sequential";
        r.layer = cc.provenance[k];
        r.compiled_layer = k;
        r.norm_n = tr.norm_n;
        r.norm_nstar = tr.norm_nstar;
        r.eps_global = tr.report.global_eps;
        r.fidelity_lb_tight = lb_tight[e];
        r.fidelity_lb_loose = lb_loose[e];
        r.canonical_distance = tr.canonical_distance_after;
        if (exact) r.fidelity_vs_oracle = fidelity(*exact, st);
        r.elapsed_ns = tr.elapsed.count();
        r.parallel_rounds = tr.parallel_rounds;
        result.rows.push_back(std::move(r));
      }
    }
  }
  const BoundAudit audit = result.summary.audit;
  result.summary = summarize(result.rows);
  result.summary.audit = audit;
  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + cfg.output);
    write_csv(out, cfg, result.rows);
  }
  return result;
}

// ---------------------------------------------------------------- PtSU convergence

ConvergenceCurve ptsu_convergence(std::size_t n, std::size_t chi, std::size_t instances,
                                  std::size_t steps, std::uint64_t seed, unsigned threads) {
  require(n >= 2 && chi >= 2 && instances >= 1, ErrorCode::kArgument,
          "ptsu_convergence needs n >= 2, chi >= 2 and at least one instance");
  std::vector<std::vector<double>> dist(instances, std::vector<double>(steps + 1));
  RoundExecutor pool(threads);
  pool.run(instances, [&](std::size_t k) {
    const std::uint64_t s = Rng::stream(seed, {kTagInstance, chi, k}).next_u64();
    VidalMps m = random_mps(n, chi, s);
    const TruncationReport rep = parallel_truncate(m, chi / 2);
    scale_bonds(m, rep);
    normalize(m);
    for (std::size_t t = 0; t <= steps; ++t) {
      if (t > 0) ptsu_step(m);
      dist[k][t] = canonical_distance(m).distance;
    }
  });
  ConvergenceCurve c;
  c.n = n;
  c.chi = chi;
  for (std::size_t t = 0; t <= steps; ++t) {
    double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t k = 0; k < instances; ++k) {
      sum += dist[k][t];
      lo = std::min(lo, dist[k][t]);
      hi = std::max(hi, dist[k][t]);
    }
    c.mean.push_back(sum / static_cast<double>(instances));
    c.min.push_back(lo);
    c.max.push_back(hi);
  }
  return c;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceCurve>& curves) {
  out << "n,chi,step,mean_distance,min_distance,max_distance\n";
  for (const auto& c : curves)
    for (std::size_t t = 0; t < c.mean.size(); ++t)
      out << c.n << ',' << c.chi << ',' << t << ',' << fmt(c.mean[t]) << ',' << fmt(c.min[t]) << ','
          << fmt(c.max[t]) << '\n';
}

// ---------------------------------------------------------------- scaling

ScalingResult scaling_probe(const std::vector<std::size_t>& sizes, std::size_t depth, std::size_t chi,
                            std::size_t g, std::size_t repeats, bool thread_per_4_sites,
                            std::uint64_t seed) {
  require(!sizes.empty() && repeats >= 1, ErrorCode::kArgument, "scaling_probe needs sizes and repeats");
  ScalingResult res;
  res.rounds_size_independent = true;
  res.sequential_linear = true;
  for (std::size_t n : sizes) {
    const unsigned threads = thread_per_4_sites ? clamp_threads((n + 3) / 4) : 1u;
    RoundExecutor exec(threads);
    EngineOptions opts;
    opts.executor = &exec;
    opts.diagnostics = false;
    ScalingRow par{"ptebd", n, threads}, seq{"sequential", n, 1};
    par.min_rounds = seq.min_rounds = std::numeric_limits<std::size_t>::max();
    double par_t = 0.0, seq_t = 0.0, par_updates = 0.0, seq_updates = 0.0;
    std::size_t timed = 0, layers = 0;
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      const Circuit c = rqc_1d(n, depth, seed + rep);
      VidalMps a = product_state(std::vector<int>(n, 0)), b = a;
      bool warm = false;
      for (const Layer& layer : c.layers) {
        const StepTrace ta = ptebd_apply_layer(a, layer, chi, g, opts);
        EngineOptions sopts = opts;
        sopts.executor = nullptr;
        const StepTrace tb = sequential_apply_layer(b, layer, chi, sopts);
        ++layers;
        par_updates += static_cast<double>(layer.pair_count());
        seq_updates += static_cast<double>(tb.two_site_updates);
        if (tb.two_site_updates != (n - 1) / 2) res.sequential_linear = false;
        if (!ta.compressed) continue;
        ++par.truncating_layers;
        par.min_rounds = std::min(par.min_rounds, ta.parallel_rounds);
        par.max_rounds = std::max(par.max_rounds, ta.parallel_rounds);
        seq.min_rounds = std::min(seq.min_rounds, tb.parallel_rounds);
        seq.max_rounds = std::max(seq.max_rounds, tb.parallel_rounds);
        if (ta.parallel_rounds != 2 + g) res.rounds_size_independent = false;
        if (!warm) {
          warm = true;  // first truncating layer of each repeat is warm-up
          continue;
        }
        par_t += static_cast<double>(ta.elapsed.count());
        seq_t += static_cast<double>(tb.elapsed.count());
        ++timed;
      }
    }
    seq.truncating_layers = par.truncating_layers;
    if (par.truncating_layers == 0) {
      res.rounds_size_independent = false;
      par.min_rounds = seq.min_rounds = 0;
    }
    par.elapsed_ns_per_layer = timed ? par_t / static_cast<double>(timed) : 0.0;
    seq.elapsed_ns_per_layer = timed ? seq_t / static_cast<double>(timed) : 0.0;
    par.two_site_updates_per_layer = par_updates / static_cast<double>(layers);
    seq.two_site_updates_per_layer = seq_updates / static_cast<double>(layers);
    res.rows.push_back(par);
    res.rows.push_back(seq);
  }
  if (sizes.size() >= 2) {
    const auto lo = std::min_element(sizes.begin(), sizes.end()) - sizes.begin();
    const auto hi = std::max_element(sizes.begin(), sizes.end()) - sizes.begin();
    const auto ratio = [&](std::size_t off) -> std::optional<double> {
      const double a = res.rows[static_cast<std::size_t>(lo) * 2 + off].elapsed_ns_per_layer;
      const double b = res.rows[static_cast<std::size_t>(hi) * 2 + off].elapsed_ns_per_layer;
      if (!(a > 0.0)) return std::nullopt;
      return b / a;
    };
    res.ptebd_time_ratio = ratio(0);
    res.sequential_time_ratio = ratio(1);
  }
  return res;
}

void write_scaling_csv(std::ostream& out, const ScalingResult& r) {
  out << "engine,n,threads,truncating_layers,elapsed_ns_per_layer,min_rounds,max_rounds,"
         "two_site_updates_per_layer\n";
  for (const auto& row : r.rows)
    out << row.engine << ',' << row.n << ',' << row.threads << ',' << row.truncating_layers << ','
        << fmt(row.elapsed_ns_per_layer) << ',' << row.min_rounds << ',' << row.max_rounds << ','
        << fmt(row.two_site_updates_per_layer) << '\n';
}

// ---------------------------------------------------------------- QFT

namespace {

// Compiled depths obtained with a generic optimizing transpiler onto a line
// (single-qubit rotations + CX basis). Listed for comparison only.
std::optional<std::size_t> external_qft_depth(std::size_t n) {
  static const std::map<std::size_t, std::size_t> table{{16, 946},   {20, 1482},  {24, 2219},
                                                        {28, 3034},  {32, 3882},  {48, 8430},
                                                        {64, 14670}, {80, 22514}, {96, 31493}};
  const auto it = table.find(n);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::vector<QftBenchRow> qft_bench(const std::vector<std::size_t>& sizes, std::size_t chi, std::size_t g,
                                   const std::vector<std::uint64_t>& seeds, std::size_t chi0,
                                   std::size_t statevector_cap, unsigned threads) {
  require(!seeds.empty(), ErrorCode::kArgument, "qft_bench needs seeds");
  std::vector<QftBenchRow> rows;
  RoundExecutor exec(threads);
  for (std::size_t n : sizes) {
    require(n >= 2, ErrorCode::kArgument, "qft_bench sizes must be >= 2");
    const CompiledCircuit cc = qft_circuit(n);
    const std::size_t phys = qft_textbook(n).physical_depth();
    const bool oracle = n <= statevector_cap;
    for (int e = 0; e < 2; ++e) {
      QftBenchRow row;
      row.n = n;
      row.engine = e == 0 ? "ptebd" : "sequential";
      row.chi = chi;
      row.physical_depth = phys;
      row.compiled_depth = cc.compiled_depth;
      row.reference_compiled_depth = external_qft_depth(n);
      row.seeds = seeds.size();
      double fsum = 0.0, tsum = 0.0;
      std::size_t tcount = 0;
      for (std::uint64_t seed : seeds) {
        RunConfig cfg;
        cfg.family = "qft";
        cfg.n = n;
        cfg.chi0 = chi0;
        VidalMps st = initial_state(cfg, seed);
        std::optional<Statevector> exact;
        if (oracle) exact = statevector_run(cc, to_statevector(st, statevector_cap), statevector_cap);
        EngineOptions opts;
        opts.executor = &exec;
        opts.diagnostics = false;
        for (std::size_t k = 0; k < cc.circuit.layers.size(); ++k) {
          const StepTrace tr = e == 0 ? ptebd_apply_layer(st, cc.circuit.layers[k], chi, g, opts)
                                      : sequential_apply_layer(st, cc.circuit.layers[k], chi, opts);
          if (k > 0) {
            tsum += static_cast<double>(tr.elapsed.count());
            ++tcount;
          }
        }
        if (exact) fsum += fidelity(*exact, st);
      }
      if (oracle) row.fidelity_mean = fsum / static_cast<double>(seeds.size());
      row.elapsed_ns_per_layer = tcount ? tsum / static_cast<double>(tcount) : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_qft_csv(std::ostream& out, const std::vector<QftBenchRow>& rows) {
  out << "n,engine,chi,physical_depth,compiled_depth,reference_compiled_depth,seeds,fidelity_mean,"
         "elapsed_ns_per_layer\n";
  for (const auto& r : rows)
    out << r.n << ',' << r.engine << ',' << r.chi << ',' << r.physical_depth << ',' << r.compiled_depth << ','
        << (r.reference_compiled_depth ? std::to_string(*r.reference_compiled_depth) : "") << ',' << r.seeds
        << ',' << (r.fidelity_mean ? fmt(*r.fidelity_mean) : "") << ',' << fmt(r.elapsed_ns_per_layer) << '\n';
}

}  // namespace ipmc
