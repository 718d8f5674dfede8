// Copyright 2026 The medlat Authors.
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

// Command-line front end. Every subcommand fills a RunReport; the report is
// printed as text, or as one JSON document with --json.
//
// Exit codes: 0 success, 1 domain error or reported violation, 2 usage error.

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "medlat/lattice_median.hpp"
#include "medlat/market_clearing.hpp"
#include "medlat/order_core.hpp"
#include "medlat/stable_matching.hpp"
#include "medlat/verify_suite.hpp"

namespace medlat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunReport {
  std::string command;
  std::string digest;
  std::vector<std::string> results;
  std::vector<std::string> violations;
  std::uint64_t seed = kDefaultSeed;
  int exit_code = kExitOk;
};

/// 64-bit FNV-1a of the canonical serialisation of a command's inputs.
inline std::string digest_of(std::string_view canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedFile, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <LatticeVector V>
std::string join_vectors(const std::vector<V>& vs, std::string_view sep = "\n") {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += sep;
    out += to_string(vs[i]);
  }
  return out;
}

template <LatticeVector V>
std::string braced(const std::vector<V>& vs) {
  return "{" + join_vectors(vs, ",") + "}";
}

inline nlohmann::json to_json(const RunReport& r) {
  return nlohmann::json{{"command", r.command},
                        {"digest", r.digest},
                        {"results", r.results},
                        {"violations", r.violations},
                        {"seed", r.seed},
                        {"rng", std::string(kRngName)}};
}

inline void emit(const RunReport& r, bool json, std::ostream& out) {
  if (json) {
    out << to_json(r).dump(2) << "\n";
    return;
  }
  for (const auto& line : r.results) out << line << "\n";
  for (const auto& v : r.violations) out << "violation: " << v << "\n";
}

template <LatticeVector V>
std::vector<V> medians_for(const std::vector<V>& family, std::optional<std::size_t> j) {
  auto medians = generalized_medians(family);
  if (!j) return medians;
  if (*j < 1 || *j > medians.size()) {
    throw Error(ErrorKind::JOutOfRange,
                "j=" + std::to_string(*j) + " for k=" + std::to_string(medians.size()));
  }
  return {medians[*j - 1]};
}

// ---- subcommand bodies ----------------------------------------------------

inline RunReport paper_example() {
  RunReport r;
  const std::vector<IdealVector> family{{1, 0}, {0, 1}, {0, 2}};
  const std::vector<IdealVector> expected{{0, 0}, {0, 1}, {1, 2}};
  const auto sorted_route = generalized_medians(family);
  const auto lattice_route = medians_via_meet_join(family);
  r.digest = digest_of(join_vectors(family));
  r.results.push_back(braced(family) + " -> " + braced(sorted_route));
  r.results.push_back("meet/join route: " + braced(lattice_route));
  if (sorted_route != expected) r.violations.push_back("sorted route " + braced(sorted_route));
  if (lattice_route != expected) r.violations.push_back("meet/join route " + braced(lattice_route));
  if (!detail::chain_and_multiset_hold(family, sorted_route)) {
    r.violations.push_back("multiset/chain invariant");
  }
  r.results.push_back(r.violations.empty() ? "PASS" : "FAIL");
  return r;
}

inline RunReport suite(const SuiteOptions& opt) {
  RunReport r;
  r.seed = opt.seed;
  r.digest = digest_of("verify " + std::to_string(opt.seed) + " " + std::to_string(opt.trials) +
                       " " + std::to_string(opt.max_n));
  const auto rep = verify_suite(opt);
  for (const auto& p : rep.properties) {
    r.results.push_back(p.name + ": " + std::to_string(p.checked - p.failed) + "/" +
                        std::to_string(p.checked) + (p.failed ? " FAIL" : " pass"));
    for (const auto& f : p.failures) r.violations.push_back(p.name + ": " + f);
  }
  r.results.push_back("not-regular gates: " + std::to_string(rep.gates_triggered));
  r.results.push_back(rep.passed() ? "PASS" : "FAIL");
  return r;
}

/// Parses `args` (without the program name), runs the command and writes
/// the report. Returns the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized medians on finite distributive lattices", "medlat"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = kDefaultSeed;
  bool json = false;
  std::size_t max_n = 7;
  std::size_t trials = 50;
  app.add_option("--seed", seed, "Seed for all randomness")->capture_default_str();
  app.add_flag("--json", json, "Emit a JSON report");
  app.add_option("--max-n", max_n, "Largest stable-matching size in randomised runs")
      ->capture_default_str();
  app.add_option("--trials", trials, "Random instances per family")->capture_default_str();

  std::string vectors_file, poset_file, instance_file, matchings_file, prices_arg, matching_arg;
  std::optional<std::size_t> j;
  std::string side = "men";

  auto* lattice = app.add_subcommand("lattice", "Order-ideal vectors and medians");
  lattice->require_subcommand(1);
  auto* l_medians = lattice->add_subcommand("medians", "Generalized medians of a vector file");
  l_medians->add_option("--vectors", vectors_file, "One vector per line")->required();
  l_medians->add_option("--j", j, "Only the j-th median (1-based)");
  auto* l_regular = lattice->add_subcommand("check-regular", "Closure under meet and join");
  l_regular->add_option("--vectors", vectors_file, "One vector per line")->required();
  auto* l_ideals = lattice->add_subcommand("ideals", "Chain partition and all order ideals");
  l_ideals->add_option("poset", poset_file, "Poset file")->required();

  auto* smp = app.add_subcommand("smp", "Stable marriage");
  smp->require_subcommand(1);
  auto* s_solve = smp->add_subcommand("solve", "Deferred acceptance");
  s_solve->add_option("--side", side, "Proposing side")
      ->check(CLI::IsMember({"men", "women"}))
      ->capture_default_str();
  s_solve->add_option("file", instance_file)->required();
  auto* s_enum = smp->add_subcommand("enumerate", "All stable matchings");
  s_enum->add_option("file", instance_file)->required();
  auto* s_median = smp->add_subcommand("median", "Median stable matching");
  s_median->add_option("file", instance_file)->required();
  s_median->add_option("--matchings", matchings_file, "One rank vector per line")->required();
  s_median->add_option("--j", j, "1-based order statistic")->required();
  auto* s_verify = smp->add_subcommand("verify", "Stability check");
  s_verify->add_option("file", instance_file)->required();
  s_verify->add_option("--matching", matching_arg, "Rank vector (r1,...,rn)")->required();

  auto* market = app.add_subcommand("market", "Market-clearing prices");
  market->require_subcommand(1);
  auto* m_clear = market->add_subcommand("clear", "Minimum clearing prices");
  m_clear->add_option("file", instance_file)->required();
  auto* m_enum = market->add_subcommand("enumerate", "All clearing vectors in the price box");
  m_enum->add_option("file", instance_file)->required();
  auto* m_median = market->add_subcommand("median", "Median clearing prices");
  m_median->add_option("file", instance_file)->required();
  m_median->add_option("--prices", matchings_file, "One price vector per line")->required();
  m_median->add_option("--j", j, "1-based order statistic")->required();
  auto* m_verify = market->add_subcommand("verify", "Clearing check");
  m_verify->add_option("file", instance_file)->required();
  m_verify->add_option("--prices", prices_arg, "Price vector (p1,...,pn)")->required();

  auto* repro = app.add_subcommand("repro", "Built-in reproductions");
  repro->require_subcommand(1);
  auto* r_example = repro->add_subcommand("paper-example", "Medians of {(1,0),(0,1),(0,2)}");
  auto* r_verify = repro->add_subcommand("verify-suite", "Randomised property battery");

  std::string echo = "medlat";
  for (const auto& a : args) echo += " " + a;

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "UsageError: " << e.what() << "\n";
    return kExitUsage;
  }

  RunReport report;
  try {
    if (*l_medians) {
      const auto text = read_file(vectors_file);
      const auto family = parse_vector_list<IdealVector>(text);
      report.digest = digest_of(join_vectors(family));
      for (const auto& g : medians_for(family, j)) report.results.push_back(to_string(g));
    } else if (*l_regular) {
      const auto family = parse_vector_list<IdealVector>(read_file(vectors_file));
      report.digest = digest_of(join_vectors(family));
      const auto rep = check_regular(family);
      if (rep.regular) {
        report.results.push_back("regular");
      } else {
        const auto& ce = *rep.counterexample;
        report.violations.push_back(to_string(ce.x) + " " + to_string(ce.y) + " " +
                                    std::string(op_name(ce.op)));
      }
    } else if (*l_ideals) {
      const auto p = parse_poset(read_file(poset_file));
      report.digest = digest_of(serialize_poset(p));
      const auto cp = chain_partition(p);
      for (const auto& chain : cp.labelled(p)) {
        std::string line = "chain:";
        for (const auto& l : chain) line += " " + l;
        report.results.push_back(line);
      }
      for (const auto& v : all_ideals(p, cp)) report.results.push_back(to_string(v));
    } else if (*s_solve || *s_enum || *s_median || *s_verify) {
      const auto inst = parse_instance(read_file(instance_file));
      report.digest = digest_of(serialize_instance(inst));
      if (*s_solve) {
        report.results.push_back(
            to_string(gale_shapley(inst, side == "men" ? Side::Men : Side::Women)));
      } else if (*s_enum) {
        for (const auto& g : all_stable_matchings(inst, std::max(max_n, kDefaultStableEnumerationBound))) {
          report.results.push_back(to_string(g));
        }
      } else if (*s_median) {
        const auto family = parse_vector_list<AssignmentVector>(read_file(matchings_file));
        report.digest = digest_of(serialize_instance(inst) + join_vectors(family));
        report.results.push_back(to_string(median_stable(inst, family, *j)));
      } else {
        const auto g = parse_vector<AssignmentVector>(matching_arg);
        const auto rep = stability_report(inst, g);
        if (!rep.is_matching) report.violations.push_back("not a matching");
        for (const auto& [m, w] : rep.blocking) {
          report.violations.push_back("blocking pair (" + std::to_string(m) + "," +
                                      std::to_string(w) + ")");
        }
        report.results.push_back(rep.stable ? "PASS" : "FAIL");
      }
    } else if (*m_clear || *m_enum || *m_median || *m_verify) {
      const auto inst = parse_market(read_file(instance_file));
      report.digest = digest_of(serialize_market(inst));
      if (*m_clear) {
        const auto p = min_clearing_prices(inst);
        report.results.push_back(to_string(p));
        std::string line = "matching:";
        const auto items = *supporting_matching(inst, p);
        for (std::size_t b = 0; b < items.size(); ++b) {
          line += " " + std::to_string(b) + "->" + std::to_string(items[b]);
        }
        report.results.push_back(line);
      } else if (*m_enum) {
        for (const auto& p : enumerate_clearing_vectors(inst)) report.results.push_back(to_string(p));
      } else if (*m_median) {
        const auto family = parse_vector_list<PriceVector>(read_file(matchings_file));
        report.digest = digest_of(serialize_market(inst) + join_vectors(family));
        report.results.push_back(to_string(median_clearing(inst, family, *j)));
      } else {
        const auto p = parse_vector<PriceVector>(prices_arg);
        const bool ok = is_market_clearing(inst, p);
        if (!ok) report.violations.push_back("no perfect matching in the demand graph");
        report.results.push_back(ok ? "PASS" : "FAIL");
      }
    } else if (*r_example) {
      report = paper_example();
    } else if (*r_verify) {
      report = suite(SuiteOptions{seed, trials, max_n, 20});
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    report.violations.push_back(std::string(e.name()));
    report.command = echo;
    report.seed = seed;
    report.exit_code = kExitFailure;
    if (json) emit(report, true, out);
    return kExitFailure;
  }

  report.command = echo;
  report.seed = seed;
  report.exit_code = report.violations.empty() ? kExitOk : kExitFailure;
  emit(report, json, out);
  return report.exit_code;
}

}  // namespace medlat::cli
