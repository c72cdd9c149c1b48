// Copyright 2026 The Mechlab Authors.
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

// Command-line front end: instance generation, mechanism runs, exhaustive
// searches, learning dynamics, shattering checks, menus and experiments.

#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mechlab/allocation_family.h"
#include "mechlab/errors.h"
#include "mechlab/experiments.h"
#include "mechlab/instance.h"
#include "mechlab/io.h"
#include "mechlab/learning.h"
#include "mechlab/mechanisms.h"
#include "mechlab/menus.h"
#include "mechlab/oracles.h"
#include "mechlab/random.h"
#include "mechlab/shattering.h"

namespace mechlab {
namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  int threads = 1;
  std::uint64_t budget = 50'000'000;
};

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::vector<Money> ParseMoneyList(const std::string& text) {
  std::vector<Money> out;
  for (const std::string& part : SplitCommas(text)) {
    out.push_back(Money::Parse(part));
  }
  return out;
}

std::uint64_t ParseMask(const std::string& text, int limit) {
  std::uint64_t mask = 0;
  for (const std::string& part : SplitCommas(text)) {
    const int v = std::stoi(part);
    if (v < 0 || v >= limit) throw DomainError("index out of range: " + part);
    mask |= std::uint64_t{1} << v;
  }
  return mask;
}

ExtendedRatio ParseAlpha(const std::string& text) {
  if (text == "inf") return ExtendedRatio::Infinite();
  return ExtendedRatio{Money::Parse(text), false};
}

Json RatioToJson(const ExtendedRatio& r) { return r.ToString(); }

Instance LoadInstance(const std::string& path) {
  return InstanceFromJson(ReadJsonFile(path));
}

AllocationFamily LoadFamily(const std::string& path) {
  return AllocationFamilyFromJson(ReadJsonFile(path));
}

// Emits JSON, or the CSV alternative when --format csv and one exists.
void Emit(const Globals& g, const Json& json, const std::string& csv = "") {
  if (g.format == "csv" && !csv.empty()) {
    WriteText(g.out, csv);
  } else {
    WriteText(g.out, DumpJson(json));
  }
}

MechanismRun MakeMechanism(const std::string& name, const std::string& spec,
                           const std::string& family) {
  if (name == "single-price") {
    const SinglePriceSpec s = SinglePriceSpecFromJson(ReadJsonFile(spec));
    return [s](const Instance& i) { return RunSinglePrice(s, i); };
  }
  if (name == "posted") {
    const PostedPriceSpec s = PostedPriceSpecFromJson(ReadJsonFile(spec));
    return [s](const Instance& i) { return RunPostedPrice(s, i); };
  }
  if (name == "mir") {
    const AllocationFamily f = LoadFamily(family);
    return [f](const Instance& i) { return RunMir(f, i); };
  }
  throw UsageError("unknown mechanism: " + name);
}

int Main(int argc, char** argv) {
  CLI::App app{"mechlab: mechanism design experiments with exact arithmetic"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Root seed");
  app.add_option("--out", g.out, "Output file (stdout when empty or -)");
  app.add_option("--format", g.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "Enumeration budget");

  std::function<void()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->require_subcommand(1);
  {
    static BucketParams bp{2, 2, 2};
    auto* bucket = gen->add_subcommand("bucket", "Bucket construction");
    bucket->add_option("--b", bp.b)->required();
    bucket->add_option("--c", bp.c)->required();
    bucket->add_option("--n", bp.n)->required();
    bucket->callback([&] {
      action = [&] { Emit(g, InstanceToJson(GenBucket(bp))); };
    });

    static int pb = 2, pc = 2, pn = 2, pm = 1;
    auto* posted = gen->add_subcommand("posted", "Random posted-price columns");
    posted->add_option("--b", pb)->required();
    posted->add_option("--c", pc)->required();
    posted->add_option("--n", pn)->required();
    posted->add_option("--m", pm)->required();
    posted->callback([&] {
      action = [&] {
        Emit(g, InstanceToJson(GenRandomPosted(pb, pc, pn, pm, g.seed)));
      };
    });

    static int im = 256;
    static double eps = 0.25;
    auto* interest = gen->add_subcommand("interest01", "0/1 interest");
    interest->add_option("--m", im)->required();
    interest->add_option("--eps", eps);
    interest->callback([&] {
      action = [&] { Emit(g, InstanceToJson(GenInterest01(im, eps, g.seed))); };
    });

    static int qn = 3, qm = 6;
    auto* polar = gen->add_subcommand("polar", "Polar additive");
    polar->add_option("--n", qn)->required();
    polar->add_option("--m", qm)->required();
    polar->callback([&] {
      action = [&] { Emit(g, InstanceToJson(GenPolar(qn, qm, g.seed))); };
    });
  }

  // run
  static std::string instance_path, spec_path, family_path, bids_path;
  auto* run = app.add_subcommand("run", "Run a mechanism on an instance");
  run->require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> mechanisms = {
      {"single-price", "Uniform per-bidder prices in a visiting order"},
      {"posted", "Per-item posted prices in a visiting order"},
      {"single-bid", "Bids sorted, each bidder pays its bid per item"},
      {"secretary", "Adaptive per-item sale with random arrivals (--seed)"},
      {"mir", "Welfare maximization over a fixed range, Clarke payments"},
  };
  for (const auto& entry : mechanisms) {
    const std::string name = entry.first;
    auto* sub = run->add_subcommand(name, entry.second);
    sub->add_option("--instance", instance_path)->required();
    if (name == "single-price" || name == "posted") {
      sub->add_option("--spec", spec_path)->required();
    } else if (name == "single-bid") {
      sub->add_option("--bids", bids_path, "Single-bid JSON file")->required();
    } else if (name == "mir") {
      sub->add_option("--family", family_path)->required();
    }
    sub->callback([&, name] {
      action = [&, name] {
        const Instance inst = LoadInstance(instance_path);
        Outcome outcome;
        if (name == "single-bid") {
          const auto bids = BidsFromJson(ReadJsonFile(bids_path));
          outcome = RunSingleBid(bids, inst);
        } else if (name == "secretary") {
          outcome = RunSecretary(inst, g.seed);
        } else {
          outcome = MakeMechanism(name, spec_path, family_path)(inst);
        }
        Emit(g, OutcomeToJson(outcome));
      };
    });
  }

  // bruteforce
  auto* brute = app.add_subcommand("bruteforce", "Exhaustive oracles");
  brute->require_subcommand(1);
  {
    auto* opt = brute->add_subcommand("opt", "Optimal welfare");
    opt->add_option("--instance", instance_path)->required();
    opt->callback([&] {
      action = [&] {
        const Instance inst = LoadInstance(instance_path);
        Json alloc = Json::array();
        for (const ItemSet& s : OptAllocation(inst)) alloc.push_back(s.Items());
        Emit(g, {{"opt", OptWelfare(inst).ToString()}, {"allocation", alloc}});
      };
    });

    static std::string orders = "all";
    static bool symmetric = false;
    auto* single = brute->add_subcommand("single-price", "Best single price");
    single->add_option("--instance", instance_path)->required();
    single->add_option("--orders", orders, "all or identity")
        ->check(CLI::IsMember({"all", "identity"}));
    single->add_flag("--symmetric", symmetric,
                     "Bidders are interchangeable; search one order");
    single->callback([&] {
      action = [&] {
        const Instance inst = LoadInstance(instance_path);
        SearchOptions options;
        options.orders = orders == "all" ? OrderMode::kAll : OrderMode::kFixed;
        options.budget = g.budget;
        options.threads = g.threads;
        options.bidders_symmetric = symmetric;
        const SearchReport report = BestSinglePrice(inst, options);
        const Money opt = OptWelfare(inst);
        Emit(g, SearchReportToJson(report, opt), SearchReportCsv(report, opt));
      };
    });

    static std::string prices;
    static int fb = 2, fc = 2;
    auto* formula = brute->add_subcommand("posted-formula",
                                          "Column expectation, two ways");
    formula->add_option("--prices", prices, "Comma-separated, visiting order")
        ->required();
    formula->add_option("--b", fb)->required();
    formula->add_option("--c", fc)->required();
    formula->callback([&] {
      action = [&] {
        const auto p = ParseMoneyList(prices);
        const auto e = PostedPriceExpectedWelfare(p, fb, fc);
        Emit(g, {{"exhaustive", e.exhaustive.ToString()},
                 {"formula", e.formula.ToString()},
                 {"degenerate_part", e.degenerate_part.ToString()},
                 {"premise_holds", e.premise_holds},
                 {"n_k", e.n_k},
                 {"agree", e.exhaustive == e.formula + e.degenerate_part},
                 {"bound", PostedPriceWelfareBound(
                               fb, fc, static_cast<int>(p.size()))
                               .ToString()}});
      };
    });

    static int am = 256, allocations = 50, trials = 10000;
    static double aeps = 0.25;
    auto* interest = brute->add_subcommand(
        "interest01", "Monte Carlo welfare of fixed random allocations");
    interest->add_option("--m", am);
    interest->add_option("--eps", aeps);
    interest->add_option("--allocations", allocations);
    interest->add_option("--trials", trials);
    interest->callback([&] {
      action = [&] {
        ExperimentConfig config;
        config.name = "interest01";
        config.params = {{"m", std::to_string(am)},
                         {"eps", std::to_string(aeps)},
                         {"allocations", std::to_string(allocations)},
                         {"trials", std::to_string(trials)}};
        config.seed = g.seed;
        config.out = g.out;
        config.format =
            g.format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
        config.threads = g.threads;
        RunExperiment(config);
      };
    });
  }

  // learn
  static std::string mechanism = "single-bid", algo = "swap", summary_path;
  static int rounds = 10000, base = 0;
  auto* learn = app.add_subcommand("learn", "No-regret dynamics");
  learn->add_option("--instance", instance_path)->required();
  learn->add_option("--mechanism", mechanism)
      ->check(CLI::IsMember({"single-bid"}));
  learn->add_option("--algo", algo)->check(CLI::IsMember({"hedge", "swap"}));
  learn->add_option("--rounds", rounds)->check(CLI::PositiveNumber);
  learn->add_option("--base", base, "Bid grid base (default: 2)");
  learn->add_option("--summary", summary_path,
                    "Also write the JSON summary here");
  learn->callback([&] {
    action = [&] {
      const Instance inst = LoadInstance(instance_path);
      const StrategySpace space =
          UniformStrategySpace(inst, SingleBidGrid(inst, base > 0 ? base : 2));
      CheckStrategySpaceSize(space, inst.num_items());
      const TabularGame game = MechanismGame(
          inst, space, [](std::span<const Money> bids, const Instance& i) {
            return RunSingleBid(bids, i);
          });
      const PlayHistory history =
          RunDynamics(game, algo == "swap" ? Algorithm::kSwap
                                           : Algorithm::kHedge,
                      rounds, g.seed);
      const Json summary = PlayHistorySummary(history, OptWelfare(inst));
      Emit(g, summary, PlayHistoryCsv(history));
      if (!summary_path.empty()) WriteText(summary_path, DumpJson(summary));
    };
  });

  // shatter
  auto* shatter = app.add_subcommand("shatter", "Shattering and families");
  shatter->require_subcommand(1);
  {
    static std::string s_set, a_set, alpha = "1", cls = "single-minded",
                                     grid = "1";
    static int k = 2;
    auto add = [&](const std::string& name, const std::string& help) {
      auto* sub = shatter->add_subcommand(name, help);
      sub->add_option("--family", family_path)->required();
      return sub;
    };
    auto* project = add("project", "Functions a family induces on (S, A)");
    project->add_option("--s", s_set, "Items, comma-separated")->required();
    project->add_option("--a", a_set, "Indices, comma-separated")->required();
    project->callback([&] {
      action = [&] {
        const AllocationFamily f = LoadFamily(family_path);
        const auto s = ParseMask(s_set, f.num_items());
        const auto a = ParseMask(a_set, f.num_indices());
        const auto fns = Project(f, s, a);
        Emit(g, {{"functions", Json(std::vector<Function>(fns.begin(),
                                                           fns.end()))},
                 {"shattered", IsShattered(f, s, a)}});
      };
    });
    for (const std::string name : {"dim", "sauer"}) {
      auto* sub = add(name, name == "dim"
                                ? "Generalized dimension Dim_k of the total members"
                                : "Sauer-Shelah inequality for the total members");
      sub->add_option("--k", k)->required();
      sub->callback([&, name] {
        action = [&, name] {
          const FunctionFamily f = FunctionFamily::Of(LoadFamily(family_path));
          const int dim = DimK(f, k);
          Json j = {{"k", k}, {"dim", dim}, {"size", f.size()}};
          if (name == "sauer") {
            const auto bound =
                SauerShelahBound(f.num_items(), f.num_indices(), k, dim);
            j["bound"] = bound;
            j["holds"] = f.size() <= bound;
          }
          Emit(g, j);
        };
      });
    }
    for (const std::string name : {"containment", "intersection"}) {
      auto* sub = add(name, "alpha-" + name + " check with a witness");
      sub->add_option("--alpha", alpha, "Rational or inf");
      sub->callback([&, name] {
        action = [&, name] {
          const AllocationFamily f = LoadFamily(family_path);
          const bool containment = name == "containment";
          const ExtendedRatio a = ParseAlpha(alpha);
          const PropertyCheck check = containment ? CheckContainment(f, a)
                                                  : CheckIntersection(f, a);
          Json j = {{"alpha", RatioToJson(a)},
                    {"holds", check.holds},
                    {"minimal_alpha",
                     RatioToJson(MinimalAlpha(
                         f, containment ? Property::kContainment
                                        : Property::kIntersection))}};
          if (check.witness) {
            Json w = Json::array();
            for (const ItemSet& s : ToItemSets(*check.witness, f.num_items())) {
              w.push_back(s.Items());
            }
            j["witness"] = w;
          }
          Emit(g, j);
        };
      });
    }
    auto* mir = add("mir-ratio", "Worst OPT / MIR welfare over a valuation class");
    mir->add_option("--class", cls)
        ->check(CLI::IsMember({"single-minded", "zero-one-additive"}));
    mir->add_option("--grid", grid, "Single-minded values, comma-separated");
    mir->callback([&] {
      action = [&] {
        const AllocationFamily f = LoadFamily(family_path);
        const auto c = cls == "single-minded"
                           ? MirValuationClass::kSingleMinded
                           : MirValuationClass::kZeroOneAdditive;
        Emit(g, {{"class", cls},
                 {"ratio", RatioToJson(MirRatio(f, c, ParseMoneyList(grid)))}});
      };
    });
  }

  // menus
  auto* menus = app.add_subcommand("menus", "Menus of truthful mechanisms");
  menus->require_subcommand(1);
  {
    static std::string mech = "single-price", menu_path;
    static int bidder = 0, en = 3, em = 6, etrials = 100;
    auto* extract = menus->add_subcommand("extract", "Extract a menu");
    extract->add_option("--instance", instance_path)->required();
    extract->add_option("--mechanism", mech)
        ->check(CLI::IsMember({"single-price", "posted", "mir"}));
    extract->add_option("--spec", spec_path);
    extract->add_option("--family", family_path);
    extract->add_option("--bidder", bidder);
    extract->callback([&] {
      action = [&] {
        MenuOptions options;
        options.threads = g.threads;
        const Menu menu =
            ExtractMenu(MakeMechanism(mech, spec_path, family_path),
                        LoadInstance(instance_path), bidder, options);
        Emit(g, MenuToJson(menu));
      };
    });
    auto* submenus = menus->add_subcommand("submenus", "Structured submenus");
    submenus->add_option("--menu", menu_path)->required();
    submenus->callback([&] {
      action = [&] {
        const Menu menu = MenuFromJson(ReadJsonFile(menu_path));
        Emit(g, SubmenusToJson(FindStructuredSubmenus(menu)));
      };
    });
    auto* events = menus->add_subcommand("events", "Polar instance events");
    events->add_option("--n", en);
    events->add_option("--m", em);
    events->add_option("--trials", etrials);
    events->callback([&] {
      action = [&] {
        const PolarEventStats s = PolarEventCheck(en, em, {}, etrials, g.seed);
        Emit(g, {{"trials", s.trials},
                 {"event1_threshold", s.event1_threshold},
                 {"menu_threshold", s.menu_threshold},
                 {"event1_frequency", s.event1_frequency},
                 {"mean_d", s.mean_d},
                 {"max_d", s.max_d}});
      };
    });
  }

  // experiment
  static std::string experiment_name;
  static std::vector<std::string> raw_params;
  static int exit_code = 0;
  auto* experiment = app.add_subcommand("experiment", "Named experiment");
  experiment->add_option("name", experiment_name)->required();
  experiment->add_option("--param,-p", raw_params, "key=value");
  experiment->callback([&] {
    action = [&] {
      ExperimentConfig config;
      config.name = experiment_name;
      for (const std::string& kv : raw_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("expected key=value");
        config.params[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      config.seed = g.seed;
      config.out = g.out;
      config.format = g.format == "csv" ? OutputFormat::kCsv
                                        : OutputFormat::kJson;
      config.threads = g.threads;
      config.budget = g.budget;
      const ExperimentResult result = RunExperiment(config);
      std::cerr << experiment_name << ": " << result.summary
                << (result.partial ? " (partial)" : "") << "\n";
      exit_code = result.exit_code;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    action();
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const TruthfulnessViolationError& e) {
    std::cerr << "truthfulness violation: " << e.what() << "\n";
    return kExitAssertion;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}

}  // namespace
}  // namespace mechlab

int main(int argc, char** argv) { return mechlab::Main(argc, argv); }
