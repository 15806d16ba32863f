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

// ipmc command-line driver. Links only against the C interface.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ipmc/ipmc.h"

namespace {

struct CliError {
  int code;
};

void check(ipmc_status s) {
  if (s != IPMC_OK) {
    std::cerr << "ipmc: " << ipmc_status_name(s) << ": " << ipmc_last_error() << '\n';
    throw CliError{static_cast<int>(s)};
  }
}

struct ConfigDeleter {
  void operator()(ipmc_config* c) const { ipmc_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<ipmc_config, ConfigDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  ipmc_string_free(s);
  return out;
}

std::vector<std::string> config_keys() {
  ipmc_config* raw = nullptr;
  check(ipmc_config_create(&raw));
  ConfigPtr cfg(raw);
  char* text = nullptr;
  check(ipmc_config_to_string(cfg.get(), &text));
  std::istringstream in(take(text));
  std::vector<std::string> keys;
  for (std::string line; std::getline(in, line);) keys.push_back(line.substr(0, line.find('=')));
  return keys;
}

// Options shared by every subcommand that consumes a RunConfig.
struct ConfigArgs {
  std::string file;
  std::vector<std::string> overrides;
  std::vector<std::pair<std::string, std::string>> flags;

  void attach(CLI::App* app, const std::vector<std::string>& keys) {
    app->add_option("-c,--config", file, "key=value config file")->check(CLI::ExistingFile);
    flags.reserve(keys.size());
    for (const auto& k : keys) {
      flags.emplace_back(k, "");
      app->add_option("--" + k, flags.back().second, "config field " + k);
    }
    app->add_option("overrides", overrides, "key=value overrides, applied last");
  }

  ConfigPtr resolve() const {
    ipmc_config* raw = nullptr;
    check(file.empty() ? ipmc_config_create(&raw) : ipmc_config_load(file.c_str(), &raw));
    ConfigPtr cfg(raw);
    for (const auto& [k, v] : flags)
      if (!v.empty()) check(ipmc_config_set(cfg.get(), k.c_str(), v.c_str()));
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) {
        std::cerr << "ipmc: override '" << o << "' is not key=value\n";
        throw CliError{IPMC_ERR_ARGUMENT};
      }
      check(ipmc_config_set(cfg.get(), o.substr(0, eq).c_str(), o.substr(eq + 1).c_str()));
    }
    return cfg;
  }
};

void emit(const std::string& json, const std::string& path) {
  if (path.empty()) {
    std::cout << json << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "ipmc: cannot write " << path << '\n';
    throw CliError{IPMC_ERR_IO};
  }
  out << json << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ipmc: parallel MPS circuit simulation experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ipmc_version());

  std::vector<std::string> keys;
  try {
    keys = config_keys();
  } catch (const CliError& e) {
    return e.code;
  }

  std::string summary_path;

  auto* run = app.add_subcommand("run", "run an experiment and write per-layer CSV");
  ConfigArgs run_args;
  run_args.attach(run, keys);
  run->add_option("--summary", summary_path, "write the JSON summary here instead of stdout");

  auto* scale = app.add_subcommand("scale", "per-layer time and round counts across sizes");
  ConfigArgs scale_args;
  scale_args.attach(scale, keys);
  std::vector<std::size_t> scale_sizes{33, 65, 129};
  std::size_t repeats = 1;
  bool per4 = false;
  scale->add_option("--sizes", scale_sizes, "qubit counts (odd)")->delimiter(',');
  scale->add_option("--repeats", repeats, "circuits per size")->check(CLI::PositiveNumber);
  scale->add_flag("--thread-per-4-sites", per4, "one worker per 4 sites, capped at the hardware");
  scale->add_option("--summary", summary_path, "write the JSON result here instead of stdout");

  auto* report = app.add_subcommand("report", "aggregate a run CSV");
  std::string csv_path;
  report->add_option("csv", csv_path, "CSV written by `run`")->required();
  report->add_option("--summary", summary_path, "write the JSON summary here instead of stdout");

  auto* conv = app.add_subcommand("ptsu-convergence", "canonical distance versus PtSU steps");
  ConfigArgs conv_args;
  conv_args.attach(conv, keys);
  std::vector<std::size_t> chis{32, 128};
  conv->add_option("--chis", chis, "bond dimensions")->delimiter(',');
  conv->add_option("--summary", summary_path, "write the JSON result here instead of stdout");

  auto* qft = app.add_subcommand("qft-bench", "QFT fidelity, depth and timing");
  ConfigArgs qft_args;
  qft_args.attach(qft, keys);
  std::vector<std::size_t> qft_sizes{8, 12, 16};
  qft->add_option("--sizes", qft_sizes, "register sizes")->delimiter(',');
  qft->add_option("--summary", summary_path, "write the JSON result here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    char* out = nullptr;
    if (*run) {
      ConfigPtr cfg = run_args.resolve();
      check(ipmc_run(cfg.get(), &out));
    } else if (*scale) {
      ConfigPtr cfg = scale_args.resolve();
      check(ipmc_scale(cfg.get(), scale_sizes.data(), scale_sizes.size(), repeats, per4 ? 1 : 0, &out));
    } else if (*report) {
      check(ipmc_report(csv_path.c_str(), &out));
    } else if (*conv) {
      ConfigPtr cfg = conv_args.resolve();
      check(ipmc_ptsu_convergence(cfg.get(), chis.data(), chis.size(), &out));
    } else if (*qft) {
      ConfigPtr cfg = qft_args.resolve();
      check(ipmc_qft_bench(cfg.get(), qft_sizes.data(), qft_sizes.size(), &out));
    }
    emit(take(out), summary_path);
  } catch (const CliError& e) {
    return e.code;
  }
  return 0;
}
