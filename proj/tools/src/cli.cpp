#include "mapfp/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mapfp/dp.hpp"
#include "mapfp/error.hpp"
#include "mapfp/instance.hpp"
#include "mapfp/io.hpp"
#include "mapfp/oracle.hpp"
#include "mapfp/random.hpp"
#include "mapfp/reductions.hpp"

namespace mapfp::cli {

namespace {

using Json = nlohmann::ordered_json;

// Internal-consistency failure: the tool produced something it cannot verify.
struct Defect : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json encode(const BigInt& x) {
  if (x >= 0 && x <= io::kMaxPlainInteger) return Json(static_cast<std::uint64_t>(x));
  return Json(x.str());
}

Json fraction(const BigInt& num, const BigInt& den) {
  return Json{{"num", num.str()}, {"den", den.str()}};
}

Json fraction(const Rational& r) {
  return fraction(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

Json fraction(const RatioForm& r) { return fraction(r.num, r.den); }

double millis(std::chrono::nanoseconds d) {
  return static_cast<double>(d.count()) / 1e6;
}

Json millis_json(std::chrono::nanoseconds d, bool timing) {
  if (!timing) return Json(0);
  // Three decimals keep the document short without hiding sub-ms runs.
  return Json(static_cast<double>(static_cast<std::int64_t>(millis(d) * 1000.0)) / 1000.0);
}

std::string millis_csv(std::chrono::nanoseconds d, bool timing) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", timing ? millis(d) : 0.0);
  return buf;
}

void emit(const std::string& bytes, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << bytes;
  } else {
    io::write_file(output, bytes);
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

BigInt parse_big(const std::string& token) {
  const auto first = token.find_first_not_of(' ');
  const auto last = token.find_last_not_of(' ');
  if (first == std::string::npos) throw Error(ErrorCode::ParseError, "empty list entry");
  const std::string t = token.substr(first, last - first + 1);
  for (char ch : t) {
    if (ch < '0' || ch > '9') throw Error(ErrorCode::ParseError, "'" + t + "' is not a non-negative integer");
  }
  return BigInt(t);
}

std::vector<BigInt> parse_big_list(const std::string& text) {
  std::vector<BigInt> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_big(part));
  return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& part : split(text, ',')) {
    const BigInt v = parse_big(part);
    if (v > BigInt(std::numeric_limits<std::uint32_t>::max())) {
      throw Error(ErrorCode::ParseError, "index " + v.str() + " out of range");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string default_certificate_path(const std::string& output) { return output + ".cert.json"; }

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string problem;
  std::string algorithm = "dp";
  std::string input;
  std::string output;
  std::string canonicalize = "on";
  std::uint64_t state_budget = dp::kDefaultStateBudget;
  std::uint64_t enumeration_budget = oracle::kDefaultEnumerationBudget;
  bool no_timing = false;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const io::InstanceDocument doc = io::read_instance(args.input);
  for (const auto& w : doc.warnings) err << "warning: " << w << '\n';
  const Instance& inst = doc.inst;
  const bool timing = !args.no_timing;

  Json report = Json::object();
  report["problem"] = args.problem;
  report["algorithm"] = args.algorithm;

  const RatioForm overall = total_ratio(inst);
  if (args.algorithm == "dp") {
    dp::Options options;
    options.canonicalize = args.canonicalize == "on";
    options.state_budget = args.state_budget;
    const dp::DpReport r =
        args.problem == "map" ? dp::dp_map(inst, options) : dp::dp_fp(inst, options);
    if (args.problem == "map") {
      if (evaluate(inst, r.witness).min_value != *r.optimum) {
        throw Defect("dp witness does not re-evaluate to the reported optimum");
      }
      report["value"] = fraction(*r.optimum);
    } else {
      if (*r.decision && !all_groups_equal(evaluate(inst, r.witness), overall)) {
        throw Defect("dp witness does not certify FP");
      }
      report["decision"] = *r.decision;
    }
    report["assignment"] = r.witness;
    report["statesExplored"] = r.states_explored;
    report["elapsedMs"] = millis_json(r.elapsed, timing);
  } else {
    const auto start = std::chrono::steady_clock::now();
    const oracle::OracleResult r = oracle::solve(inst, args.enumeration_budget);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    if (args.problem == "map") {
      report["value"] = fraction(r.optimum);
      report["assignment"] = r.witness;
    } else {
      report["decision"] = r.fp_true;
      report["assignment"] = r.fp_witness.value_or(Assignment{});
    }
    report["statesExplored"] = r.assignments_enumerated;
    report["elapsedMs"] = millis_json(elapsed, timing);
  }
  emit(report.dump() + "\n", args.output, out);
  return kOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string input;
  std::string assignment;
  std::string target;
  std::string output;
};

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  const io::InstanceDocument doc = io::read_instance(args.input);
  for (const auto& w : doc.warnings) err << "warning: " << w << '\n';
  const Assignment asg = io::read_assignment(args.assignment);
  io::validate_assignment(doc.inst, asg);

  const GroupStats stats = evaluate(doc.inst, asg);
  const RatioForm overall = total_ratio(doc.inst);

  Json report = Json::object();
  report["overall"] = fraction(overall);
  Json groups = Json::array();
  for (const auto& g : stats.groups) groups.push_back(fraction(g));
  report["groups"] = std::move(groups);
  report["min"] = fraction(stats.min_value);
  report["equalsOverall"] = all_groups_equal(stats, overall);
  if (!args.target.empty()) {
    report["equalsTarget"] = all_groups_equal(stats, io::parse_ratio(args.target));
  }
  emit(report.dump() + "\n", args.output, out);
  return kOk;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string values;
  std::size_t m = 2;
  std::string witness;
  std::string output;
  std::string certificate;
};

void verify_certificate(const reductions::GeneratedInstance& gen, const Assignment& asg) {
  const GroupStats stats = evaluate(gen.inst, asg);
  if (!all_groups_equal(stats, total_ratio(gen.inst)) || !all_groups_equal(stats, gen.params.target)) {
    throw Defect("lifted certificate does not put every group at S/T");
  }
}

int finish_generate(const reductions::GeneratedInstance& gen, const std::optional<Assignment>& cert,
                    const GenerateArgs& args, std::ostream& out) {
  if (const auto violations = reductions::identity_violations(gen); !violations.empty()) {
    throw Defect("generated gadget violates: " + violations.front());
  }
  io::write_instance(args.output, gen);

  Json summary = Json::object();
  summary["kind"] = std::string(reductions::to_string(gen.params.kind));
  summary["K"] = encode(gen.params.K);
  summary["N"] = encode(gen.params.N);
  summary["L"] = encode(gen.params.L);
  summary["M"] = encode(gen.params.M);
  summary["items"] = gen.inst.size();
  summary["output"] = args.output;
  if (cert) {
    verify_certificate(gen, *cert);
    const std::string path =
        args.certificate.empty() ? default_certificate_path(args.output) : args.certificate;
    io::write_assignment(path, *cert);
    summary["certificate"] = path;
    summary["certificateVerified"] = true;
  }
  out << summary.dump() << '\n';
  return kOk;
}

int cmd_generate_partition(const GenerateArgs& args, std::ostream& out) {
  const auto src = reductions::make_partition_instance(parse_big_list(args.values));
  const auto gen = reductions::generate_q2(src, args.m);
  std::optional<Assignment> cert;
  if (!args.witness.empty()) {
    const auto subset = parse_index_list(args.witness);
    cert = reductions::lift_q2_certificate(src, subset, args.m);
  }
  return finish_generate(gen, cert, args, out);
}

int cmd_generate_three_partition(const GenerateArgs& args, std::ostream& out) {
  const auto src = reductions::make_three_partition_instance(parse_big_list(args.values), args.m);
  const auto gen = reductions::generate_q4(src);
  std::optional<Assignment> cert;
  if (!args.witness.empty()) {
    std::vector<std::vector<std::size_t>> triples;
    for (const auto& group : split(args.witness, ';')) triples.push_back(parse_index_list(group));
    cert = reductions::lift_q4_certificate(src, triples);
  }
  return finish_generate(gen, cert, args, out);
}

// ---------------------------------------------------------------- random

struct RandomArgs {
  std::size_t n = 1;
  std::size_t m = 2;
  std::uint64_t max_value = 1;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_random(const RandomArgs& args, std::ostream& out) {
  SplitMix64 rng(args.seed);
  const Instance inst = random_instance(args.n, args.m, args.max_value, rng);
  emit(io::format_instance(inst), args.output, out);
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string n_range = "2..8";
  std::string m_set = "2";
  std::uint64_t max_value = 6;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::string output;
  std::uint64_t enumeration_budget = oracle::kDefaultEnumerationBudget;
  bool no_timing = false;
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(ErrorCode::ParseError, "range must look like A..B");
  const BigInt lo = parse_big(text.substr(0, dots));
  const BigInt hi = parse_big(text.substr(dots + 2));
  if (lo < 1 || hi < lo || hi > 64) {
    throw Error(ErrorCode::ParseError, "range '" + text + "' must satisfy 1 <= A <= B <= 64");
  }
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  const auto [n_lo, n_hi] = parse_range(args.n_range);
  std::vector<std::size_t> ms;
  for (const auto& m : parse_big_list(args.m_set)) {
    if (m < 1 || m > 64) throw Error(ErrorCode::ParseError, "m-set entries must lie in 1..64");
    ms.push_back(static_cast<std::size_t>(m));
  }
  const bool timing = !args.no_timing;

  SplitMix64 rng(args.seed);
  std::string table = "n,m,S,T,dpStates,dpMs,bruteMs,agree\n";
  bool all_agree = true;
  for (const std::size_t m : ms) {
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
      for (std::size_t trial = 0; trial < args.trials; ++trial) {
        const Instance inst = random_instance(n, m, args.max_value, rng);
        const dp::DpReport map = dp::dp_map(inst);
        const dp::DpReport fp = dp::dp_fp(inst);
        const auto start = std::chrono::steady_clock::now();
        const oracle::OracleResult brute = oracle::solve(inst, args.enumeration_budget);
        const auto brute_elapsed = std::chrono::steady_clock::now() - start;

        const bool agree = *map.optimum == brute.optimum && *fp.decision == brute.fp_true;
        all_agree = all_agree && agree;
        table += std::to_string(n) + "," + std::to_string(m) + "," + inst.total_profit().str() +
                 "," + inst.total_time().str() + "," + std::to_string(map.states_explored) + "," +
                 millis_csv(map.elapsed + fp.elapsed, timing) + "," +
                 millis_csv(brute_elapsed, timing) + "," + (agree ? "true" : "false") + "\n";
      }
    }
  }
  emit(table, args.output, out);
  if (!all_agree) {
    err << "error: dynamic program and brute force disagree on at least one row\n";
    return kDefect;
  }
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::MemoryBudgetExceeded:
      return kBudgetExceeded;
    default:
      return kInvalidInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solvers for maximizing average profit and fractional partition"};
  app.require_subcommand(1);
  std::function<int()> action;

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve MAP or FP for an instance file");
  solve_cmd->add_option("--problem", solve.problem, "map or fp")
      ->required()
      ->check(CLI::IsMember({"map", "fp"}));
  solve_cmd->add_option("--algorithm", solve.algorithm, "dp or brute")
      ->check(CLI::IsMember({"dp", "brute"}))
      ->capture_default_str();
  solve_cmd->add_option("--input", solve.input, "Instance file")->required();
  solve_cmd->add_option("--output", solve.output, "Report file (default: stdout)");
  solve_cmd->add_option("--canonicalize", solve.canonicalize, "Sort tracked groups in dp states")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  solve_cmd->add_option("--state-budget", solve.state_budget, "Maximum distinct dp states")
      ->capture_default_str();
  solve_cmd->add_option("--enumeration-budget", solve.enumeration_budget,
                        "Maximum m^n for brute force")
      ->capture_default_str();
  solve_cmd->add_flag("--no-timing", solve.no_timing, "Report elapsedMs as 0");
  solve_cmd->callback([&] { action = [&] { return cmd_solve(solve, out, err); }; });

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Evaluate an assignment against an instance");
  check_cmd->add_option("--input", check.input, "Instance file")->required();
  check_cmd->add_option("--assignment", check.assignment, "Assignment file")->required();
  check_cmd->add_option("--target", check.target, "Target ratio p/q");
  check_cmd->add_option("--output", check.output, "Report file (default: stdout)");
  check_cmd->callback([&] { action = [&] { return cmd_check(check, out, err); }; });

  GenerateArgs gen_partition;
  GenerateArgs gen_three;
  auto* generate_cmd = app.add_subcommand("generate", "Build hardness gadgets from source instances");
  generate_cmd->require_subcommand(1);
  auto* partition_cmd = generate_cmd->add_subcommand("partition", "Partition -> FP gadget");
  partition_cmd->add_option("--c", gen_partition.values, "Comma-separated source values")->required();
  partition_cmd->add_option("--m", gen_partition.m, "Group count (>= 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20))
      ->capture_default_str();
  partition_cmd->add_option("--witness", gen_partition.witness,
                            "1-based indices of one half, comma-separated");
  partition_cmd->add_option("--output", gen_partition.output, "Gadget instance file")->required();
  partition_cmd->add_option("--certificate", gen_partition.certificate,
                            "Lifted assignment file (default: <output>.cert.json)");
  partition_cmd->callback([&] { action = [&] { return cmd_generate_partition(gen_partition, out); }; });

  auto* three_cmd = generate_cmd->add_subcommand("threepartition", "3-Partition -> FP gadget");
  three_cmd->add_option("--d", gen_three.values, "Comma-separated source values")->required();
  three_cmd->add_option("--m", gen_three.m, "Number of triples")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  three_cmd->add_option("--witness", gen_three.witness,
                        "Triples of 1-based indices, e.g. \"1,2,3;4,5,6\"");
  three_cmd->add_option("--output", gen_three.output, "Gadget instance file")->required();
  three_cmd->add_option("--certificate", gen_three.certificate,
                        "Lifted assignment file (default: <output>.cert.json)");
  three_cmd->callback([&] { action = [&] { return cmd_generate_three_partition(gen_three, out); }; });

  RandomArgs random;
  auto* random_cmd = app.add_subcommand("random", "Draw a random instance from SplitMix64");
  random_cmd->add_option("--n", random.n, "Item count")->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--m", random.m, "Group count")->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--max-value", random.max_value, "Entries are drawn in 1..V")
      ->required()
      ->check(CLI::PositiveNumber);
  random_cmd->add_option("--seed", random.seed, "64-bit seed")->required();
  random_cmd->add_option("--output", random.output, "Instance file (default: stdout)");
  random_cmd->callback([&] { action = [&] { return cmd_random(random, out); }; });

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare dp against brute force on random instances");
  bench_cmd->add_option("--n-range", bench.n_range, "Item counts A..B")->capture_default_str();
  bench_cmd->add_option("--m-set", bench.m_set, "Comma-separated group counts")->capture_default_str();
  bench_cmd->add_option("--max-value", bench.max_value, "Entries are drawn in 1..V")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials, "Instances per (n, m)")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "64-bit seed")->capture_default_str();
  bench_cmd->add_option("--output", bench.output, "CSV file (default: stdout)");
  bench_cmd->add_option("--enumeration-budget", bench.enumeration_budget,
                        "Maximum m^n for the brute-force leg")
      ->capture_default_str();
  bench_cmd->add_flag("--no-timing", bench.no_timing, "Write 0 in the timing columns");
  bench_cmd->callback([&] { action = [&] { return cmd_bench(bench, out, err); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    return action ? action() : kInvalidInput;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const Defect& e) {
    err << "defect: " << e.what() << '\n';
    return kDefect;
  }
}

}  // namespace mapfp::cli
