#include <CLI11.hpp>

#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "irr/construct.hpp"
#include "irr/instance.hpp"
#include "irr/io.hpp"
#include "irr/lab.hpp"
#include "irr/lp_export.hpp"
#include "irr/objective.hpp"
#include "irr/search.hpp"
#include "irr/timetable.hpp"
#include "irr/types.hpp"

namespace {

using namespace irr;

// Exit codes: 0 ok, 1 infeasible or invalid input, 2 parse or configuration
// error. Structural schedule clashes (a pair twice, a team doubly booked)
// count as invalid input, not as malformed files.
template <typename Fn>
int run_guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const SizeLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteError("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw WriteError("short write to " + path);
}

// "CON40" -> (CON, 40). Returns false when the string is not letters
// followed by digits or the letters name no family.
bool parse_family_spec(const std::string& s, Family& family, int& n) {
  size_t k = 0;
  while (k < s.size() && std::isalpha(static_cast<unsigned char>(s[k]))) ++k;
  if (k == 0 || k == s.size()) return false;
  for (size_t j = k; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  try {
    family = family_from_string(s.substr(0, k));
  } catch (const ParseError&) {
    return false;
  }
  n = std::stoi(s.substr(k));
  return true;
}

// A path to a distance matrix, or a family shorthand like CON40 generated
// on the spot (geometry seed 0, so GAL40 always means the same points).
ITTPInstance load_ittp(const std::string& instance, int rounds) {
  if (std::filesystem::exists(instance)) return read_ittp(instance, rounds);
  Family family;
  int n;
  if (parse_family_spec(instance, family, n))
    return generate_family(family, n, rounds, 0);
  throw ParseError("cannot open " + instance);
}

std::string suite_help() {
  std::string out = "neighborhood suite (";
  bool first = true;
  for (const auto& name : suite_names()) {
    if (!first) out += ", ";
    out += name;
    first = false;
  }
  return out + ")";
}

// ------------------------------------------------------------------ solve

struct SolveArgs {
  std::string problem;
  std::string instance;
  int rounds = -1;
  std::string suite = "All";
  std::uint64_t seed = 0;
  double time_limit = 7200.0;
  long long target = std::numeric_limits<long long>::min();
  std::string out;
  std::string trace;
};

int cmd_solve(const SolveArgs& args) {
  SearchConfig cfg;
  cfg.suite = suite_from_name(args.suite);
  cfg.seed = args.seed;
  cfg.time_limit = args.time_limit;
  cfg.target_cost = args.target;

  std::optional<SearchResult> res;
  int n = 0, r = 0;
  long long initial_cost = 0;
  if (args.problem == "ittp") {
    if (args.rounds < 0) throw ParseError("--rounds is required for ittp instances");
    ITTPInstance inst = load_ittp(args.instance, args.rounds);
    n = inst.n;
    r = inst.r;
    res.emplace(solve_ittp(inst, cfg));
    initial_cost = ittp_evaluate(res->initial, inst).total();
  } else {
    YSTPInstance inst = read_ystp(args.instance);
    if (args.rounds >= 0 && args.rounds != inst.r)
      throw ParseError("--rounds " + std::to_string(args.rounds) +
                       " does not match the instance (" + std::to_string(inst.r) + ")");
    n = inst.n;
    r = inst.r;
    res.emplace(solve_ystp(inst, cfg));
    initial_cost = ystp_evaluate(res->initial, inst).total();
  }

  const Evaluation& eval = res->best_evaluation;
  std::cout << "instance " << args.instance << '\n'
            << "problem " << args.problem << '\n'
            << "n " << n << '\n'
            << "r " << r << '\n'
            << "suite " << args.suite << '\n'
            << "seed " << args.seed << '\n'
            << "time_limit " << args.time_limit << '\n'
            << "construction " << res->construction.method << '\n'
            << "initial_cost " << initial_cost << '\n'
            << "best_cost " << eval.total() << '\n'
            << "travel_cost " << eval.travel_cost << '\n'
            << "penalty_cost " << eval.penalty_cost << '\n'
            << "feasible " << (eval.feasible ? "yes" : "no") << '\n'
            << "iterations " << res->iterations << '\n'
            << "accepted " << res->accepted << '\n'
            << "elapsed_seconds " << res->elapsed_seconds << '\n';
  for (const auto& v : eval.hard_violations)
    std::cout << "violation " << v.describe() << '\n';

  if (!args.out.empty()) {
    write_solution_csv(res->best(), args.out);
    std::cout << "out " << args.out << '\n';
  } else {
    std::cout << '\n' << res->best().to_table_string();
  }
  if (!args.trace.empty()) {
    write_trace_csv(args.trace, res->trace());
    std::cout << "trace " << args.trace << '\n';
  }
  return eval.feasible ? 0 : 1;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  std::string problem;
  std::string instance;
  std::string solution;
  int rounds = -1;
};

int cmd_validate(const ValidateArgs& args) {
  std::optional<Timetable> parsed;
  std::optional<Evaluation> eval;
  std::vector<std::string> complaints;
  try {
    parsed.emplace(read_solution_csv(args.solution));
    const Timetable& t = *parsed;
    if (args.rounds >= 0 && args.rounds != t.r())
      complaints.push_back("solution has " + std::to_string(t.r()) +
                           " rounds, --rounds says " + std::to_string(args.rounds));
    if (args.problem == "ittp") {
      ITTPInstance inst = load_ittp(args.instance, t.r());
      if (inst.n != t.n())
        complaints.push_back("solution covers " + std::to_string(t.n()) +
                             " teams, instance has " + std::to_string(inst.n));
      else
        eval = ittp_evaluate(t, inst);
    } else {
      YSTPInstance inst = read_ystp(args.instance);
      if (inst.n != t.n())
        complaints.push_back("solution covers " + std::to_string(t.n()) +
                             " teams, instance has " + std::to_string(inst.n));
      else if (inst.r != t.r())
        complaints.push_back("solution has " + std::to_string(t.r()) +
                             " rounds, instance has " + std::to_string(inst.r));
      else
        eval = ystp_evaluate(t, inst);
    }
  } catch (const ParseError&) {
    throw;  // malformed file: exit 2 through the shared mapping
  } catch (const Error& e) {
    std::cout << "infeasible\n";
    std::cout << "violation " << e.what() << '\n';
    return 1;
  }

  ValidationReport report = validate(*parsed);
  bool ok = complaints.empty() && report.pass() && eval && eval->feasible;
  std::cout << (ok ? "feasible" : "infeasible") << '\n';
  for (const auto& line : complaints) std::cout << "violation " << line << '\n';
  for (const auto& line : report.violations) std::cout << "violation " << line << '\n';
  if (eval) {
    for (const auto& v : eval->hard_violations)
      std::cout << "violation " << v.describe() << '\n';
    std::cout << "travel_cost " << eval->travel_cost << '\n'
              << "penalty_cost " << eval->penalty_cost << '\n'
              << "total_cost " << eval->total() << '\n';
  }
  return ok ? 0 : 1;
}

// -------------------------------------------------------------------- lab

struct LabArgs {
  int n = 0;
  int r = 0;
  std::string suite = "All";
  std::string mode = "colorings";
  std::string csv;
};

int cmd_lab(const LabArgs& args) {
  EnumMode mode = args.mode == "full" ? EnumMode::kFull : EnumMode::kColorings;
  ComponentReport report = check_connectivity(args.n, args.r,
                                              suite_from_name(args.suite), mode);
  std::cout << report.summary();
  if (!args.csv.empty()) {
    write_text(args.csv, report.csv());
    std::cout << "csv " << args.csv << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------ bench

struct BenchInstance {
  std::string spec;
  long long target = std::numeric_limits<long long>::min();
};

struct BenchConfig {
  std::string problem = "ittp";
  std::string suite = "All";
  int seeds = 5;
  double time_limit = 7200.0;
  int threads = 0;  // 0: one worker per core
  std::string raw_path;
  std::string summary_path;
  std::vector<BenchInstance> instances;
};

BenchConfig parse_bench_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  BenchConfig cfg;
  if (const char* env = std::getenv("IRR_TIME_LIMIT")) {
    try {
      cfg.time_limit = std::stod(env);
    } catch (const std::exception&) {
      throw ParseError("IRR_TIME_LIMIT is not a number: " + std::string(env));
    }
  }
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (size_t hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string key, eq;
    if (!(ls >> key)) continue;
    if (!(ls >> eq) || eq != "=")
      throw ParseError(path + " line " + std::to_string(lineno) +
                       ": expected 'key = value'");
    auto rest = [&] {
      std::string value;
      std::getline(ls, value);
      size_t a = value.find_first_not_of(" \t");
      return a == std::string::npos ? std::string() : value.substr(a);
    };
    auto num = [&](auto& slot) {
      std::istringstream vs(rest());
      if (!(vs >> slot))
        throw ParseError(path + " line " + std::to_string(lineno) + ": bad number");
    };
    if (key == "problem") {
      cfg.problem = rest();
      if (cfg.problem != "ittp" && cfg.problem != "ystp")
        throw ParseError(path + " line " + std::to_string(lineno) +
                         ": problem must be ittp or ystp");
    } else if (key == "suite") {
      cfg.suite = rest();
    } else if (key == "seeds") {
      num(cfg.seeds);
    } else if (key == "time_limit") {
      num(cfg.time_limit);
    } else if (key == "threads") {
      num(cfg.threads);
    } else if (key == "raw") {
      cfg.raw_path = rest();
    } else if (key == "summary") {
      cfg.summary_path = rest();
    } else if (key == "instance") {
      std::istringstream vs(rest());
      BenchInstance bi;
      vs >> bi.spec;
      std::string extra;
      while (vs >> extra) {
        if (extra.rfind("target=", 0) == 0) {
          try {
            bi.target = std::stoll(extra.substr(7));
          } catch (const std::exception&) {
            throw ParseError(path + " line " + std::to_string(lineno) + ": bad target");
          }
        } else {
          throw ParseError(path + " line " + std::to_string(lineno) +
                           ": unknown instance option '" + extra + "'");
        }
      }
      if (bi.spec.empty())
        throw ParseError(path + " line " + std::to_string(lineno) + ": empty instance");
      cfg.instances.push_back(bi);
    } else {
      throw ParseError(path + " line " + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    }
  }
  if (cfg.instances.empty()) throw ParseError(path + ": no instance lines");
  if (cfg.seeds < 1) throw ParseError(path + ": seeds must be at least 1");
  suite_from_name(cfg.suite);  // fail fast on a bad name
  return cfg;
}

// "CON40-10" (family, n, rounds) or "file.ittp:10" for ittp; a path for ystp.
ITTPInstance materialize_ittp(const std::string& spec) {
  if (size_t colon = spec.rfind(':'); colon != std::string::npos) {
    int rounds = 0;
    try {
      rounds = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParseError("bad rounds in instance spec '" + spec + "'");
    }
    return read_ittp(spec.substr(0, colon), rounds);
  }
  size_t dash = spec.rfind('-');
  if (dash == std::string::npos)
    throw ParseError("ittp instance spec '" + spec +
                     "' is neither FAMILYn-r nor file:rounds");
  Family family;
  int n = 0, rounds = 0;
  if (!parse_family_spec(spec.substr(0, dash), family, n))
    throw ParseError("unknown family in instance spec '" + spec + "'");
  try {
    rounds = std::stoi(spec.substr(dash + 1));
  } catch (const std::exception&) {
    throw ParseError("bad rounds in instance spec '" + spec + "'");
  }
  return generate_family(family, n, rounds, 0);
}

struct BenchRow {
  int instance_idx = 0;
  std::uint64_t seed = 0;
  int n = 0;
  int r = 0;
  long long cost = 0;
  bool feasible = false;
  long long iterations = 0;
  double elapsed = 0.0;
  std::string error;
};

int cmd_bench(const std::string& config_path) {
  BenchConfig cfg = parse_bench_config(config_path);
  std::vector<BenchRow> rows;
  for (size_t i = 0; i < cfg.instances.size(); ++i)
    for (int s = 0; s < cfg.seeds; ++s) {
      BenchRow row;
      row.instance_idx = static_cast<int>(i);
      row.seed = static_cast<std::uint64_t>(s);
      rows.push_back(row);
    }

  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t k = next.fetch_add(1);
      if (k >= rows.size()) return;
      BenchRow& row = rows[k];
      const BenchInstance& bi = cfg.instances[row.instance_idx];
      try {
        SearchConfig sc;
        sc.suite = suite_from_name(cfg.suite);
        sc.seed = row.seed;
        sc.time_limit = cfg.time_limit;
        sc.target_cost = bi.target;
        if (cfg.problem == "ittp") {
          ITTPInstance inst = materialize_ittp(bi.spec);
          row.n = inst.n;
          row.r = inst.r;
          SearchResult res = solve_ittp(inst, sc);
          row.cost = res.best_evaluation.total();
          row.feasible = res.best_evaluation.feasible;
          row.iterations = res.iterations;
          row.elapsed = res.elapsed_seconds;
        } else {
          YSTPInstance inst = read_ystp(bi.spec);
          row.n = inst.n;
          row.r = inst.r;
          SearchResult res = solve_ystp(inst, sc);
          row.cost = res.best_evaluation.total();
          row.feasible = res.best_evaluation.feasible;
          row.iterations = res.iterations;
          row.elapsed = res.elapsed_seconds;
        }
      } catch (const Error& e) {
        row.error = e.what();
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };

  int want = cfg.threads > 0 ? cfg.threads
                             : static_cast<int>(std::thread::hardware_concurrency());
  if (want < 1) want = 1;
  want = std::min<int>(want, static_cast<int>(rows.size()));
  std::vector<std::thread> pool;
  for (int w = 0; w < want; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::ostringstream raw;
  raw << "instance,suite,seed,cost,feasible,iterations,elapsed_seconds,error\n";
  for (const BenchRow& row : rows) {
    raw << cfg.instances[row.instance_idx].spec << ',' << cfg.suite << ','
        << row.seed << ',' << row.cost << ',' << (row.feasible ? 1 : 0) << ','
        << row.iterations << ',' << std::fixed << std::setprecision(2)
        << row.elapsed << ',' << row.error << '\n';
  }

  std::ostringstream summary;
  summary << "instance,n,r,suite,seeds,best,mean,worst,feasible_runs,target,hits\n";
  bool all_ok = true;
  for (size_t i = 0; i < cfg.instances.size(); ++i) {
    const BenchInstance& bi = cfg.instances[i];
    long long best = 0, worst = 0, sum = 0;
    int feasible_runs = 0, hits = 0, n = 0, r = 0;
    for (const BenchRow& row : rows) {
      if (row.instance_idx != static_cast<int>(i)) continue;
      if (!row.error.empty()) {
        all_ok = false;
        std::cerr << "error: " << bi.spec << " seed " << row.seed << ": "
                  << row.error << '\n';
        continue;
      }
      n = row.n;
      r = row.r;
      if (!row.feasible) continue;
      if (feasible_runs == 0 || row.cost < best) best = row.cost;
      if (feasible_runs == 0 || row.cost > worst) worst = row.cost;
      sum += row.cost;
      ++feasible_runs;
      if (bi.target != std::numeric_limits<long long>::min() && row.cost <= bi.target)
        ++hits;
    }
    summary << bi.spec << ',' << n << ',' << r << ',' << cfg.suite << ','
            << cfg.seeds << ',';
    if (feasible_runs == 0) {
      summary << ",,,0,";
      all_ok = false;
    } else {
      summary << best << ',' << std::fixed << std::setprecision(1)
              << static_cast<double>(sum) / feasible_runs << ',' << worst << ','
              << feasible_runs << ',';
    }
    if (bi.target != std::numeric_limits<long long>::min())
      summary << bi.target << ',' << hits << '\n';
    else
      summary << ",\n";
  }

  if (cfg.raw_path.empty())
    std::cout << "# per-seed\n" << raw.str();
  else
    write_text(cfg.raw_path, raw.str());
  if (cfg.summary_path.empty())
    std::cout << "# best-of-seeds\n" << summary.str();
  else
    write_text(cfg.summary_path, summary.str());
  return all_ok ? 0 : 1;
}

// -------------------------------------------------------------- export-lp

int cmd_export_lp(const std::string& instance, const std::string& out) {
  YSTPInstance inst = read_ystp(instance);
  export_lp(inst, out);
  std::cout << "out " << out << '\n';
  return 0;
}

// -------------------------------------------------------------------- gen

struct GenArgs {
  std::string problem = "ittp";
  std::string family = "CON";
  int n = 0;
  int rounds = -1;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& args) {
  std::string out = args.out;
  if (args.problem == "ystp") {
    if (args.rounds < 0) throw ParseError("--rounds is required for ystp generation");
    YSTPInstance inst = generate_synthetic_ystp(args.n, args.rounds, args.seed);
    if (out.empty()) out = "ystp" + std::to_string(args.n) + ".ystp";
    write_ystp(inst, out);
  } else {
    Family family = family_from_string(args.family);
    // The matrix file carries no round count; any legal r works here.
    ITTPInstance inst = generate_family(family, args.n, 1, args.seed);
    if (out.empty()) {
      out = args.family + std::to_string(args.n) + ".ittp";
      for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    write_ittp(inst, out);
  }
  std::cout << "out " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incomplete round robin timetabling toolkit"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run the late-acceptance search on an instance");
  solve->add_option("--problem", solve_args.problem, "ittp or ystp")
      ->required()
      ->check(CLI::IsMember({"ittp", "ystp"}));
  solve->add_option("--instance", solve_args.instance,
                    "instance file, or a family shorthand like CON40")
      ->required();
  solve->add_option("--rounds", solve_args.rounds, "rounds (required for ittp)");
  solve->add_option("--suite", solve_args.suite, suite_help());
  solve->add_option("--seed", solve_args.seed, "search seed (default 0)");
  solve->add_option("--time-limit", solve_args.time_limit,
                    "seconds; 0 writes the initial solution")
      ->envname("IRR_TIME_LIMIT");
  solve->add_option("--target", solve_args.target, "stop early at this cost or better");
  solve->add_option("--out", solve_args.out, "solution file (default: print the table)");
  solve->add_option("--trace", solve_args.trace, "write the search trace CSV here");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Check a solution file against an instance");
  validate->add_option("--problem", validate_args.problem, "ittp or ystp")
      ->required()
      ->check(CLI::IsMember({"ittp", "ystp"}));
  validate->add_option("--instance", validate_args.instance,
                       "instance file, or a family shorthand like CON40")
      ->required();
  validate->add_option("--solution", validate_args.solution, "solution CSV")->required();
  validate->add_option("--rounds", validate_args.rounds,
                       "cross-check the solution's round count");

  LabArgs lab_args;
  auto* lab = app.add_subcommand("lab", "Exhaustive small-instance experiments");
  lab->add_option("--n", lab_args.n, "teams (even, at most 8)")->required();
  lab->add_option("--r", lab_args.r, "rounds")->required();
  lab->add_option("--suite", lab_args.suite, suite_help());
  lab->add_option("--mode", lab_args.mode, "colorings or full")
      ->check(CLI::IsMember({"colorings", "full"}));
  lab->add_option("--csv", lab_args.csv, "also write the component table here");

  std::string bench_config;
  auto* bench = app.add_subcommand("bench", "Batch solve over seeds and report a table");
  bench->add_option("--config", bench_config,
                    "key = value file: problem, suite, seeds, time_limit, threads, "
                    "raw, summary and one instance line per instance")
      ->required();

  std::string lp_instance, lp_out = "model.lp";
  auto* export_lp_cmd = app.add_subcommand("export-lp", "Write an integer program for an instance");
  export_lp_cmd->add_option("--instance", lp_instance, "ystp instance file")->required();
  export_lp_cmd->add_option("--out", lp_out, "LP file path");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate instance files");
  gen->add_option("--problem", gen_args.problem, "ittp (default) or ystp")
      ->check(CLI::IsMember({"ittp", "ystp"}));
  gen->add_option("--family", gen_args.family, "CON, CIRC, LINE, INCR or GAL");
  gen->add_option("--n", gen_args.n, "teams")->required();
  gen->add_option("--rounds", gen_args.rounds, "rounds (ystp only)");
  gen->add_option("--seed", gen_args.seed, "geometry seed (GAL and ystp)");
  gen->add_option("--out", gen_args.out, "output path (default: derived from the name)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (solve->parsed()) return run_guarded([&] { return cmd_solve(solve_args); });
  if (validate->parsed()) return run_guarded([&] { return cmd_validate(validate_args); });
  if (lab->parsed()) return run_guarded([&] { return cmd_lab(lab_args); });
  if (bench->parsed()) return run_guarded([&] { return cmd_bench(bench_config); });
  if (export_lp_cmd->parsed())
    return run_guarded([&] { return cmd_export_lp(lp_instance, lp_out); });
  if (gen->parsed()) return run_guarded([&] { return cmd_gen(gen_args); });
  return 2;
}
