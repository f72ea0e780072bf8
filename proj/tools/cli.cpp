#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "blockpart/balancer.hpp"
#include "blockpart/bench.hpp"
#include "blockpart/error.hpp"
#include "blockpart/functionals.hpp"
#include "blockpart/io.hpp"
#include "blockpart/json.hpp"
#include "blockpart/oracle.hpp"
#include "blockpart/pl_solver.hpp"
#include "blockpart/preprocess.hpp"
#include "blockpart/streaming.hpp"

namespace blockpart::cli {

namespace {

// BLOCKPART_LOG=1 (or any non-empty value other than 0) enables diagnostics
// on stderr; BLOCKPART_LOG=2 adds timings.
int log_level() {
  const char* v = std::getenv("BLOCKPART_LOG");
  if (v == nullptr || *v == '\0' || std::string(v) == "0") return 0;
  if (std::string(v) == "2" || std::string(v) == "debug") return 2;
  return 1;
}

class Input {
 public:
  Input(const std::string& path, std::istream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw ParseError(0, "cannot open '" + path + "'");
    stream_ = file_.get();
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

FunctionalSpec functional_or_throw(const std::string& label) {
  auto spec = parse_functional(label);
  if (!spec) throw ValidationError("unknown functional '" + label + "' (sum, lp:<p>, abs-sum)");
  return *spec;
}

InputFormat format_for(const FunctionalSpec& spec) {
  switch (spec.kind) {
    case FunctionalSpec::Kind::sum:
      return {false, BoundKind::unit_interval, 1.0};
    case FunctionalSpec::Kind::abs_sum:
      return {false, BoundKind::symmetric, 1.0};
    case FunctionalSpec::Kind::lp:
      return {true, BoundKind::unit_interval, spec.p};
  }
  return {};
}

std::vector<std::size_t> parse_cut_list(const std::string& text) {
  std::vector<std::size_t> cuts;
  if (text.empty()) return cuts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw ValidationError("bad cut '" + item + "' in --init");
    }
    if (pos != item.size() || v < 0) throw ValidationError("bad cut '" + item + "' in --init");
    cuts.push_back(static_cast<std::size_t>(v));
  }
  return cuts;
}

struct Args {
  std::string file;
  std::size_t k = 0;
  std::string functional = "sum";
  std::string init;
  double target = 0.0;
  std::size_t k_max = 64;
  std::size_t emit_limit = 0;
  bool signed_input = false;
  std::string horizon_rule = "at-least";
  bool symmetric = false;
  std::optional<std::size_t> preprocess_k;
  double tol = 1e-7;
  std::size_t starts = 16;
  bool grid_fallback = true;
  std::uint64_t seed = 1;
  std::string grid = "8:2,16:2,32:2,64:2,8:4,16:4,32:4,64:4,8:8,16:8,32:8,64:8";
  std::size_t trials = 50;
  std::string bench_init = "first-block";
};

}  // namespace

int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Balanced contiguous block partitions of real sequences"};
  app.require_subcommand(1);
  Args a;

  auto* partition = app.add_subcommand("partition", "Balance into k blocks with spread <= 1");
  partition->add_option("--k", a.k, "Number of blocks")->required()->check(CLI::PositiveNumber);
  partition->add_option("--functional", a.functional, "sum | lp:<p>");
  partition->add_option("--init", a.init, "Initial cut vector, comma separated");
  partition->add_option("file", a.file, "Input file ('-' for stdin)");

  auto* preprocess = app.add_subcommand("preprocess", "Group a signed sequence into sizes in [0,1]");
  preprocess->add_option("--k", a.preprocess_k, "Also balance into k blocks")
      ->check(CLI::PositiveNumber);
  preprocess->add_flag("--symmetric", a.symmetric, "Elements in [-1,1]; either sign of total");
  preprocess->add_option("file", a.file, "Input file ('-' for stdin)");

  auto* stream = app.add_subcommand("stream", "Partition a long stream around a target size");
  stream->add_option("--target", a.target, "Target block size a >= 0")
      ->required()
      ->check(CLI::NonNegativeNumber);
  stream->add_option("--k-max", a.k_max, "Largest prefix partition tried")
      ->check(CLI::PositiveNumber);
  stream->add_option("--emit-limit", a.emit_limit, "Stop after this many blocks (0 = all)");
  stream->add_flag("--signed", a.signed_input, "Elements <= 1 of either sign");
  stream->add_option("--horizon-rule", a.horizon_rule, "at-least | at-most")
      ->check(CLI::IsMember({"at-least", "at-most"}));
  stream->add_option("file", a.file, "Input file ('-' for stdin)");

  auto* spread2 = app.add_subcommand("spread2", "Spread <= 2 partition for unit-change functionals");
  spread2->add_option("--k", a.k, "Number of blocks")->required()->check(CLI::PositiveNumber);
  spread2->add_option("--functional", a.functional, "sum | lp:<p> | abs-sum")->required();
  spread2->add_option("--tol", a.tol, "Diagonal search tolerance")->check(CLI::PositiveNumber);
  spread2->add_option("--starts", a.starts, "Random starts");
  spread2->add_option("--seed", a.seed, "Seed for random starts");
  spread2->add_flag("--grid-fallback,!--no-grid-fallback", a.grid_fallback,
                    "Grid-scan starts for small instances");
  spread2->add_option("file", a.file, "Input file ('-' for stdin)");

  auto* oracle = app.add_subcommand("oracle", "Exact minimum spread by enumeration");
  oracle->add_option("--k", a.k, "Number of blocks")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--functional", a.functional, "sum | lp:<p> | abs-sum");
  oracle->add_option("file", a.file, "Input file ('-' for stdin)");

  auto* check = app.add_subcommand("check", "Check the size functional conditions exhaustively");
  check->add_option("--functional", a.functional, "sum | lp:<p> | abs-sum")->required();
  check->add_option("file", a.file, "Input file ('-' for stdin)");

  auto* bench = app.add_subcommand("bench", "Balancer iteration counts over an (n,k) grid");
  bench->add_option("--grid", a.grid, "Comma separated n:k pairs");
  bench->add_option("--trials", a.trials, "Trials per cell")->check(CLI::PositiveNumber);
  bench->add_option("--seed", a.seed, "Master seed");
  bench->add_option("--init", a.bench_init, "first-block | threshold")
      ->check(CLI::IsMember({"first-block", "threshold"}));

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  const int verbosity = log_level();
  const auto started = std::chrono::steady_clock::now();
  auto log = [&](const std::string& msg) {
    if (verbosity > 0) err << "[blockpart] " << msg << '\n';
  };

  try {
    if (*partition) {
      const FunctionalSpec spec = functional_or_throw(a.functional);
      if (spec.kind == FunctionalSpec::Kind::abs_sum) {
        throw PreconditionError(
            "abs-sum does not grow monotonically per element; use spread2 instead");
      }
      Input input(a.file, in);
      const Sequence seq = parse_input(input.get(), format_for(spec));
      log("read " + std::to_string(seq.size()) + " elements");
      const SizeFunctional s = make_functional(spec, seq);
      BalanceOptions options;
      if (!a.init.empty()) options.init = CutVector(seq.size(), a.k, parse_cut_list(a.init));
      const PartitionResult r = balance(s, a.k, options);
      out << as_json(r).dump() << '\n';
      if (r.termination != Termination::converged) return kSolverError;
    } else if (*preprocess) {
      Input input(a.file, in);
      const BoundKind bound = a.symmetric ? BoundKind::symmetric : BoundKind::upper_bounded;
      const Sequence seq = parse_input(input.get(), {false, bound, 1.0});
      nlohmann::json j;
      if (a.symmetric && seq.total() < 0.0) {
        std::vector<double> neg(seq.values().begin(), seq.values().end());
        for (double& v : neg) v = -v;
        j = as_json(group_blocks(Sequence::scalars(std::move(neg), BoundKind::symmetric)));
        j["negated"] = true;
      } else {
        j = as_json(group_blocks(seq));
        j["negated"] = false;
      }
      if (a.preprocess_k) {
        const PartitionResult r = a.symmetric ? balance_symmetric(seq, *a.preprocess_k)
                                              : balance_signed(seq, *a.preprocess_k);
        j["partition"] = as_json(r);
      }
      out << j.dump() << '\n';
    } else if (*stream) {
      Input input(a.file, in);
      IstreamSource source(input.get());
      StreamOptions options;
      options.k_max = a.k_max;
      options.emit_limit = a.emit_limit;
      options.rule = a.horizon_rule == "at-most" ? HorizonRule::at_most : HorizonRule::at_least;
      const BlockSink sink = [&](const EmittedBlock& b) { out << as_json(b).dump() << '\n'; };
      const StreamPlan plan = a.signed_input ? stream_signed(source, a.target, options, sink)
                                             : stream_partition(source, a.target, options, sink);
      out.flush();
      err << nlohmann::json{{"plan", as_json(plan)}}.dump() << '\n';
    } else if (*spread2) {
      const FunctionalSpec spec = functional_or_throw(a.functional);
      Input input(a.file, in);
      const Sequence seq = parse_input(input.get(), format_for(spec));
      const SizeFunctional s = make_functional(spec, seq);
      const ConditionReport report = check_conditions(s);
      if (!report.holds.nonnegative || !report.holds.unit_change) {
        throw PreconditionError("functional '" + s.label() +
                                "' violates non-negativity or unit change on this input");
      }
      Spread2Options options;
      options.diagonal.tol = a.tol;
      options.diagonal.starts = a.starts;
      options.diagonal.seed = a.seed;
      options.diagonal.grid_fallback = a.grid_fallback;
      const PartitionResult r = balance_spread2(s, a.k, options);
      out << as_json(r).dump() << '\n';
    } else if (*oracle) {
      const FunctionalSpec spec = functional_or_throw(a.functional);
      Input input(a.file, in);
      const Sequence seq = parse_input(input.get(), format_for(spec));
      out << as_json(min_spread(make_functional(spec, seq), a.k)).dump() << '\n';
    } else if (*check) {
      const FunctionalSpec spec = functional_or_throw(a.functional);
      Input input(a.file, in);
      InputFormat format = format_for(spec);
      if (spec.kind == FunctionalSpec::Kind::sum) format.bound = BoundKind::unbounded;
      const Sequence seq = parse_input(input.get(), format);
      const SizeFunctional s = make_functional(spec, seq);
      nlohmann::json j = as_json(check_conditions(s));
      j["functional"] = s.label();
      out << j.dump() << '\n';
    } else if (*bench) {
      auto grid = parse_grid(a.grid);
      if (!grid) throw ValidationError("bad --grid '" + a.grid + "' (expected n:k,n:k,...)");
      BenchOptions options;
      options.grid = std::move(*grid);
      options.trials = a.trials;
      options.seed = a.seed;
      options.init = a.bench_init == "threshold" ? BenchInit::threshold : BenchInit::first_block;
      const BenchReport report = run_bench(options);
      out << as_json(report).dump() << '\n';
      if (report.violation) return kSolverError;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const BoundError& e) {
    err << "bound violation: " << e.what() << '\n';
    return kBoundError;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverError;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kSolverError;
  } catch (const Error& e) {
    // Validation, precondition, size guard and horizon errors.
    err << "error: " << e.what() << '\n';
    return kBoundError;
  }

  if (verbosity > 1) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              started)
                        .count();
    log("done in " + std::to_string(ms) + " ms");
  }
  return kSuccess;
}

}  // namespace blockpart::cli
