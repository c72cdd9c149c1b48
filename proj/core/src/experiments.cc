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

#include "mechlab/experiments.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

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

// Typed access to ExperimentConfig::params; every key must be consumed.
class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  std::string String(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    const auto it = raw_.find(key);
    return it == raw_.end() ? fallback : it->second;
  }
  long long Int(const std::string& key, long long fallback) {
    const std::string s = String(key, std::to_string(fallback));
    return ParseInt(key, s);
  }
  double Double(const std::string& key, double fallback) {
    std::ostringstream def;
    def << fallback;
    const std::string s = String(key, def.str());
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("parameter " + key + " is not a number: " + s);
    }
  }
  std::vector<long long> IntList(const std::string& key,
                                 const std::string& fallback) {
    const std::string s = String(key, fallback);
    std::vector<long long> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(ParseInt(key, part));
    if (out.empty()) throw UsageError("parameter " + key + " is empty");
    return out;
  }
  // Rejects keys that no experiment step asked for.
  void CheckAllUsed() const {
    for (const auto& [key, value] : raw_) {
      if (!used_.count(key)) throw UsageError("unknown parameter: " + key);
    }
  }

 private:
  static long long ParseInt(const std::string& key, const std::string& s) {
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("parameter " + key + " is not an integer: " + s);
    }
  }

  const std::map<std::string, std::string>& raw_;
  std::set<std::string> used_;
};

int ToInt(long long v) { return static_cast<int>(v); }

// Accumulates rows and the JSON body of one experiment.
struct Report {
  Json json = Json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::string summary;
  bool failed = false;

  std::string Render(OutputFormat format, bool partial) const {
    if (format == OutputFormat::kJson) {
      Json out = json;
      out["partial"] = partial;
      out["summary"] = summary;
      out["passed"] = !failed;
      return DumpJson(out);
    }
    std::string text;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text += ',';
        text += cells[i];
      }
      text += '\n';
    };
    line(csv_header);
    for (const auto& row : csv_rows) line(row);
    return text;
  }
};

constexpr const char* kExperimentCsvSchema = "mechlab.experiment.v1";

using Runner = std::function<void(const ExperimentConfig&, Params&, Report&)>;

// Bucket instances: exhaustive best single price against the welfare bound
// with at most b + n special pairs.
void BucketSweep(const ExperimentConfig& config, Params& params,
                 Report& report) {
  const auto bs = params.IntList("b", "2");
  const auto cs = params.IntList("c", "2");
  const auto ns = params.IntList("n", "2");
  const bool reduce = params.Int("reduce_orders", 1) != 0;
  params.CheckAllUsed();
  report.csv_header = {"schema", "b", "c", "n", "m", "opt", "best", "ratio",
                       "bound", "spec"};
  report.json["experiment"] = "thm3-bucket-sweep";
  report.json["rows"] = Json::array();
  int violations = 0;
  for (long long b : bs) {
    for (long long c : cs) {
      for (long long n : ns) {
        const BucketParams p{ToInt(b), ToInt(c), ToInt(n)};
        const Instance inst = GenBucket(p);
        const Money opt = OptWelfare(inst);
        SearchOptions options;
        options.budget = config.budget;
        options.threads = config.threads;
        options.bidders_symmetric = reduce;
        const SearchReport search = BestSinglePrice(inst, options);
        const Outcome replay = RunSinglePrice(search.best_spec, inst);
        const int x = std::min(p.b + p.n, p.b * p.n);
        const Money cb = Pow(Money(p.c), p.b);
        const Money bound = Money(x) * cb * Money(p.c) / Money(p.n) +
                            Money(p.b * p.n - x) * cb / Money(p.n);
        const bool ok = replay.welfare == search.best_welfare &&
                        search.best_welfare <= bound &&
                        search.best_welfare <= opt &&
                        SpecialPairCount(replay, p) <= p.b + p.n;
        if (!ok) ++violations;
        const Money ratio = opt / search.best_welfare;
        report.csv_rows.push_back(
            {kExperimentCsvSchema, std::to_string(b), std::to_string(c),
             std::to_string(n), std::to_string(inst.num_items()),
             opt.ToString(), search.best_welfare.ToString(), ratio.ToString(),
             bound.ToString(), SinglePriceSpecLabel(search.best_spec)});
        report.json["rows"].push_back(
            {{"b", b},
             {"c", c},
             {"n", n},
             {"m", inst.num_items()},
             {"opt", opt.ToString()},
             {"best", search.best_welfare.ToString()},
             {"ratio", ratio.ToString()},
             {"bound", bound.ToString()},
             {"search", SearchReportToJson(search, opt)},
             {"ok", ok}});
      }
    }
  }
  report.failed = violations > 0;
  report.summary = "violations: " + std::to_string(violations);
}

// Random posted-price columns: exhaustive expectation against the per-level
// formula, and against cb/n + c + b.
void PostedFormula(const ExperimentConfig& config, Params& params,
                   Report& report) {
  const auto ns = params.IntList("n", "2,3");
  const auto cs = params.IntList("c", "2");
  const auto bs = params.IntList("b", "1,2");
  const long long columns = params.Int("columns", 1000);
  params.CheckAllUsed();
  if (columns < 1) throw UsageError("columns must be >= 1");
  report.csv_header = {"schema", "n", "c", "b", "columns", "premise_columns",
                       "mismatches", "bound_violations", "max_expectation",
                       "bound"};
  report.json["experiment"] = "thm4-formula";
  report.json["rows"] = Json::array();
  long long mismatches = 0, bound_violations = 0;
  std::uint64_t stream_index = 0;
  for (long long n : ns) {
    for (long long c : cs) {
      for (long long b : bs) {
        const Money bound = PostedPriceWelfareBound(ToInt(b), ToInt(c),
                                                    ToInt(n));
        // Prices on a half-integer grid up to c^(b+1) + 1, so both sides of
        // every level value are exercised.
        const std::uint64_t top =
            2 * static_cast<std::uint64_t>(
                    Pow(Money(ToInt(c)), ToInt(b) + 1).num() + 1);
        long long row_mismatch = 0, row_bound = 0, premise = 0;
        Money max_exp;
        for (long long t = 0; t < columns; ++t) {
          Rng rng(DeriveSeed(config.seed, streams::kPostedColumn,
                             stream_index++));
          std::vector<Money> prices(n);
          for (auto& p : prices) {
            p = Money(static_cast<std::int64_t>(rng.Uniform(top + 1)), 2);
          }
          const PostedColumnExpectation e =
              PostedPriceExpectedWelfare(prices, ToInt(b), ToInt(c));
          premise += e.premise_holds;
          if (e.exhaustive != e.formula + e.degenerate_part ||
              (e.premise_holds && e.degenerate_part != Money(0))) {
            ++row_mismatch;
          }
          if (e.exhaustive > bound) ++row_bound;
          max_exp = Max(max_exp, e.exhaustive);
        }
        mismatches += row_mismatch;
        bound_violations += row_bound;
        report.csv_rows.push_back(
            {kExperimentCsvSchema, std::to_string(n), std::to_string(c),
             std::to_string(b), std::to_string(columns),
             std::to_string(premise), std::to_string(row_mismatch),
             std::to_string(row_bound), max_exp.ToString(),
             bound.ToString()});
        report.json["rows"].push_back({{"n", n},
                                       {"c", c},
                                       {"b", b},
                                       {"columns", columns},
                                       {"premise_columns", premise},
                                       {"mismatches", row_mismatch},
                                       {"bound_violations", row_bound},
                                       {"max_expectation", max_exp.ToString()},
                                       {"bound", bound.ToString()}});
      }
    }
  }
  report.failed = mismatches > 0 || bound_violations > 0;
  report.summary = "mismatches: " + std::to_string(mismatches) +
                   ", bound violations: " + std::to_string(bound_violations);
}

// No-regret play of the single-bid mechanism on a bucket instance.
void SingleBidPoa(const ExperimentConfig& config, Params& params,
                  Report& report) {
  const BucketParams p{ToInt(params.Int("b", 3)), ToInt(params.Int("c", 3)),
                       ToInt(params.Int("n", 3))};
  const int base = ToInt(params.Int("base", p.c));
  const long long rounds = params.Int("rounds", 100000);
  const std::string algo = params.String("algo", "swap");
  params.CheckAllUsed();
  Algorithm algorithm;
  if (algo == "swap") {
    algorithm = Algorithm::kSwap;
  } else if (algo == "hedge") {
    algorithm = Algorithm::kHedge;
  } else {
    throw UsageError("algo must be hedge or swap");
  }
  if (rounds < 1 || rounds > 10'000'000) {
    throw UsageError("rounds must be in [1, 10^7]");
  }
  const Instance inst = GenBucket(p);
  const StrategySpace space =
      UniformStrategySpace(inst, SingleBidGrid(inst, base));
  CheckStrategySpaceSize(space, inst.num_items());
  const TabularGame game = MechanismGame(
      inst, space, [](std::span<const Money> bids, const Instance& i) {
        return RunSingleBid(bids, i);
      });
  const PlayHistory history =
      RunDynamics(game, algorithm, ToInt(rounds), config.seed);
  const Money opt = OptWelfare(inst);
  const double poa = EmpiricalPoa(history, opt);
  const double bound = 12.0 * std::log(static_cast<double>(inst.num_items()));
  report.failed = !(poa <= bound);
  report.json = PlayHistorySummary(history, opt);
  report.json["experiment"] = "single-bid-poa";
  report.json["poa_bound"] = bound;
  report.json["instance"] = {{"b", p.b}, {"c", p.c}, {"n", p.n}};
  report.csv_header = {"schema", "b", "c", "n", "m", "algo", "rounds", "opt",
                       "poa", "bound"};
  std::ostringstream poa_text, bound_text;
  poa_text << poa;
  bound_text << bound;
  report.csv_rows.push_back(
      {kExperimentCsvSchema, std::to_string(p.b), std::to_string(p.c),
       std::to_string(p.n), std::to_string(inst.num_items()), algo,
       std::to_string(rounds), opt.ToString(), poa_text.str(),
       bound_text.str()});
  report.summary = "empirical ratio " + poa_text.str() + " (bound " +
                   bound_text.str() + ")";
}

// Sauer-Shelah inequality on every family of Y^X (when small) plus seeded
// random families.
void SauerExhaustive(const ExperimentConfig& config, Params& params,
                     Report& report) {
  const int x = ToInt(params.Int("x", 3));
  const int y = ToInt(params.Int("y", 2));
  const auto ks = params.IntList("k", "2");
  const long long random = params.Int("random", 0);
  params.CheckAllUsed();
  if (x < 1 || y < 1 || x > 16) throw UsageError("need 1 <= x <= 16, y >= 1");
  for (long long k : ks) {
    if (k < 1 || k > y) throw UsageError("k must lie in [1, y]");
  }
  double total_functions = std::pow(static_cast<double>(y), x);
  report.json["experiment"] = "sauer-exhaustive";
  report.json["rows"] = Json::array();
  report.csv_header = {"schema", "x", "y", "k", "mode", "families",
                       "violations", "dim_disagreements"};
  long long violations = 0, disagreements = 0;
  auto check = [&](const FunctionFamily& family, int k, long long& v,
                   long long& d) {
    const int dim = DimK(family, k);
    if (dim != DimKByCounting(family, k)) ++d;
    if (family.size() > SauerShelahBound(x, y, k, dim)) ++v;
  };
  auto emit = [&](int k, const std::string& mode, long long families,
                  long long v, long long d) {
    violations += v;
    disagreements += d;
    report.csv_rows.push_back({kExperimentCsvSchema, std::to_string(x),
                               std::to_string(y), std::to_string(k), mode,
                               std::to_string(families), std::to_string(v),
                               std::to_string(d)});
    report.json["rows"].push_back({{"x", x},
                                   {"y", y},
                                   {"k", k},
                                   {"mode", mode},
                                   {"families", families},
                                   {"violations", v},
                                   {"dim_disagreements", d}});
  };
  for (long long k : ks) {
    if (total_functions <= 20) {
      const std::uint64_t count = std::uint64_t{1}
                                  << static_cast<int>(total_functions);
      if (count > config.budget) {
        throw ResourceError("exhaustive family count exceeds budget");
      }
      long long v = 0, d = 0;
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        check(FamilyFromMask(x, y, mask), ToInt(k), v, d);
      }
      emit(ToInt(k), "exhaustive", static_cast<long long>(count), v, d);
    }
    if (random > 0) {
      long long v = 0, d = 0;
      for (long long i = 0; i < random; ++i) {
        check(RandomFunctionFamily(
                  x, y, DeriveSeed(config.seed, streams::kFixture, i)),
              ToInt(k), v, d);
      }
      emit(ToInt(k), "random", random, v, d);
    }
  }
  if (report.csv_rows.empty()) {
    throw UsageError("|Y|^|X| > 20 needs random=N families");
  }
  report.failed = violations > 0 || disagreements > 0;
  report.summary = "violations: " + std::to_string(violations) +
                   ", dim disagreements: " + std::to_string(disagreements);
}

// Menus of three truthful mechanisms over polar instances.
void MenusPolar(const ExperimentConfig& config, Params& params,
                Report& report) {
  const int n = ToInt(params.Int("n", 3));
  const int m = ToInt(params.Int("m", 6));
  const int trials = ToInt(params.Int("trials", 10));
  const int range_size = ToInt(params.Int("mir_range", 8));
  const int event_trials = ToInt(params.Int("event_trials", 0));
  params.CheckAllUsed();
  if (n < 1 || m < 1 || m > kMaxMenuItems || trials < 1 || range_size < 1) {
    throw UsageError("need n >= 1, 1 <= m <= 12, trials >= 1, mir_range >= 1");
  }
  report.json["experiment"] = "menus-polar";
  report.json["rows"] = Json::array();
  report.csv_header = {"schema", "trial", "mechanism", "bidder", "menu_size",
                       "submenus", "largest_submenu", "invalid_submenus",
                       "violation"};
  long long violations = 0, invalid = 0;
  MenuOptions options;
  options.threads = config.threads;
  for (int t = 0; t < trials; ++t) {
    const Instance inst = GenPolar(n, m, DeriveSeed(config.seed,
                                                    streams::kTrial, t));
    Rng rng(DeriveSeed(config.seed, streams::kFixture, t));
    // Single price: prices drawn from the instance's threshold grid.
    const std::vector<Threshold> grid = SinglePriceGrid(inst);
    SinglePriceSpec single;
    single.order = rng.Permutation(n);
    for (int i = 0; i < n; ++i) {
      single.prices.push_back(grid[rng.Uniform(grid.size())]);
    }
    // Posted prices fixed at each bidder's competitor max on this instance.
    PostedPriceSpec posted;
    posted.order = rng.Permutation(n);
    posted.prices.assign(n, std::vector<Money>(m));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        for (int o = 0; o < n; ++o) {
          if (o != i) {
            posted.prices[i][j] =
                Max(posted.prices[i][j], inst.valuation(o).ItemValue(j));
          }
        }
      }
    }
    std::vector<Function> functions;
    for (int f = 0; f < range_size; ++f) {
      Function fn(m);
      for (int& image : fn) image = static_cast<int>(rng.Uniform(n));
      functions.push_back(std::move(fn));
    }
    const AllocationFamily range =
        AllocationFamily::FromFunctions(m, n, functions);
    const std::vector<std::pair<std::string, MechanismRun>> mechanisms = {
        {"single-price",
         [single](const Instance& i) { return RunSinglePrice(single, i); }},
        {"posted-price",
         [posted](const Instance& i) { return RunPostedPrice(posted, i); }},
        {"mir", [range](const Instance& i) { return RunMir(range, i); }},
    };
    for (const auto& [name, mech] : mechanisms) {
      for (int i = 0; i < n; ++i) {
        std::string violation;
        std::size_t menu_size = 0, largest = 0, found = 0;
        long long bad = 0;
        try {
          const Menu menu = ExtractMenu(mech, inst, i, options);
          menu_size = menu.entries.size();
          const auto subs = FindStructuredSubmenus(menu);
          found = subs.size();
          for (const auto& sub : subs) {
            largest = std::max(largest, sub.members.size());
            if (!ValidateStructuredSubmenu(menu, sub)) ++bad;
          }
        } catch (const TruthfulnessViolationError& e) {
          violation = e.what();
          ++violations;
        }
        invalid += bad;
        report.csv_rows.push_back(
            {kExperimentCsvSchema, std::to_string(t), name, std::to_string(i),
             std::to_string(menu_size), std::to_string(found),
             std::to_string(largest), std::to_string(bad),
             violation.empty() ? "none" : "yes"});
        report.json["rows"].push_back({{"trial", t},
                                       {"mechanism", name},
                                       {"bidder", i},
                                       {"menu_size", menu_size},
                                       {"submenus", found},
                                       {"largest_submenu", largest},
                                       {"invalid_submenus", bad},
                                       {"violation", violation}});
      }
    }
  }
  if (event_trials > 0) {
    const PolarEventStats s = PolarEventCheck(n, m, {}, event_trials,
                                              config.seed);
    report.json["events"] = {{"trials", s.trials},
                             {"event1_threshold", s.event1_threshold},
                             {"event1_frequency", s.event1_frequency},
                             {"mean_d", s.mean_d},
                             {"max_d", s.max_d}};
  }
  report.failed = violations > 0 || invalid > 0;
  report.summary = "violations: " + std::to_string(violations) +
                   ", invalid submenus: " + std::to_string(invalid);
}

// Fixed random allocations against random 0/1 interest instances.
void Interest01(const ExperimentConfig& config, Params& params,
                Report& report) {
  const int m = ToInt(params.Int("m", 256));
  const double eps = params.Double("eps", 0.25);
  const int allocations = ToInt(params.Int("allocations", 50));
  const int trials = ToInt(params.Int("trials", 10000));
  const double tolerance = params.Double("tolerance", 0.05);
  params.CheckAllUsed();
  if (m < 1 || allocations < 1 || trials < 1) {
    throw UsageError("need m, allocations, trials >= 1");
  }
  const int n = Interest01BidderCount(m, eps);
  std::vector<std::vector<int>> fixed(allocations, std::vector<int>(m));
  for (int a = 0; a < allocations; ++a) {
    Rng rng(DeriveSeed(config.seed, streams::kFixture, a));
    for (int& owner : fixed[a]) owner = static_cast<int>(rng.Uniform(n));
  }
  const auto stats = AllocationSetWelfareBound(
      m, n, fixed, trials, DeriveSeed(config.seed, streams::kTrial, 0),
      config.threads);
  const double target = static_cast<double>(m) / n;
  report.json["experiment"] = "interest01";
  report.json["n"] = n;
  report.json["target"] = target;
  report.json["rows"] = Json::array();
  report.csv_header = {"schema", "allocation", "mean_welfare",
                       "frequency_at_least_2m_over_n", "within_tolerance"};
  int outside = 0;
  for (int a = 0; a < allocations; ++a) {
    const bool ok =
        std::abs(stats[a].mean_welfare - target) <= tolerance * target;
    outside += !ok;
    std::ostringstream mean, freq;
    mean << stats[a].mean_welfare;
    freq << stats[a].frequency_at_least;
    report.csv_rows.push_back({kExperimentCsvSchema, std::to_string(a),
                               mean.str(), freq.str(), ok ? "1" : "0"});
    report.json["rows"].push_back({{"allocation", a},
                                   {"mean_welfare", stats[a].mean_welfare},
                                   {"frequency_at_least",
                                    stats[a].frequency_at_least},
                                   {"ok", ok}});
  }
  report.failed = outside > 0;
  report.summary = "outside tolerance: " + std::to_string(outside) + " of " +
                   std::to_string(allocations);
}

const std::vector<std::pair<std::string, Runner>>& Registry() {
  static const std::vector<std::pair<std::string, Runner>> registry = {
      {"thm3-bucket-sweep", BucketSweep},
      {"thm4-formula", PostedFormula},
      {"single-bid-poa", SingleBidPoa},
      {"sauer-exhaustive", SauerExhaustive},
      {"menus-polar", MenusPolar},
      {"interest01", Interest01},
  };
  return registry;
}

}  // namespace

std::vector<std::string> ExperimentNames() {
  std::vector<std::string> names;
  for (const auto& entry : Registry()) names.push_back(entry.first);
  return names;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  ExperimentResult result;
  const auto& registry = Registry();
  const auto it = std::find_if(
      registry.begin(), registry.end(),
      [&](const auto& entry) { return entry.first == config.name; });
  if (it == registry.end()) {
    result.exit_code = kExitUsage;
    result.summary = "unknown experiment: " + config.name;
    return result;
  }
  Report report;
  Params params(config.params);
  try {
    it->second(config, params, report);
    result.exit_code = report.failed ? kExitAssertion : kExitOk;
  } catch (const UsageError& e) {
    result.exit_code = kExitUsage;
    result.summary = e.what();
    return result;
  } catch (const ParameterError& e) {
    result.exit_code = kExitUsage;
    result.summary = e.what();
    return result;
  } catch (const ResourceError& e) {
    result.exit_code = kExitResource;
    result.partial = true;
    report.summary = std::string("resource limit: ") + e.what();
  }
  result.summary = report.summary;
  result.output = report.Render(config.format, result.partial);
  WriteText(config.out, result.output);
  return result;
}

}  // namespace mechlab
