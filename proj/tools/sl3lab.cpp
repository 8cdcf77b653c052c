// Command-line front end. JSON reports go to stdout; errors go to stderr with
// exit status 1 (2 for usage errors, handled by CLI11).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "sl3lab/attempt.hpp"
#include "sl3lab/error.hpp"
#include "sl3lab/falsifier.hpp"
#include "sl3lab/gap.hpp"
#include "sl3lab/io.hpp"
#include "sl3lab/norms.hpp"
#include "sl3lab/plane.hpp"
#include "sl3lab/slicing.hpp"

using namespace sl3lab;

namespace {

void print_json(const io::json& j) { std::cout << j.dump(2) << '\n'; }

int require_prime(int p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidModulus, std::to_string(p) + " is not prime");
  return p;
}

// Property suite behind `norms --check`: direct-sum formulas and norm
// inequalities on seeded random block operators.
int run_norm_checks(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<BlockLayout> layouts{build_layout(LayoutPreset::Tight, 1), build_layout({8, 14}),
                                         build_layout(LayoutPreset::Tight, 2)};
  std::size_t hs_fail = 0, tr_fail = 0, op_fail = 0, ineq_fail = 0;
  for (std::size_t t = 0; t < count; ++t) {
    const auto a = BlockOperator::random(layouts[t % layouts.size()], rng);
    const Matrix d = a.to_dense();
    const double hs = hs_norm(a), tr = trace_norm(a), op = operator_norm(a);
    if (std::abs(hs - hs_norm(d)) > 1e-10 * (1.0 + hs)) ++hs_fail;
    if (std::abs(tr - trace_norm(d)) > 1e-10 * (1.0 + tr)) ++tr_fail;
    if (std::abs(op - operator_norm(d)) > 1e-10 * (1.0 + op)) ++op_fail;
    if (tr < std::abs(a.trace()) - 1e-10 || hs > tr + 1e-10 || op > hs + 1e-10) ++ineq_fail;
  }
  const auto line = [](const char* name, std::size_t fails) {
    std::cout << (fails ? "FAIL " : "PASS ") << name << " (" << fails << " violations)\n";
  };
  line("hilbert-schmidt direct sum", hs_fail);
  line("trace norm direct sum", tr_fail);
  line("operator norm direct sum", op_fail);
  line("op <= hs <= trace, |trace| <= trace norm", ineq_fail);
  return hs_fail + tr_fail + op_fail + ineq_fail ? 1 : 0;
}

struct SweepConfig {
  std::vector<int> primes;
  std::vector<std::size_t> ranks;
  std::vector<std::string> strategies{"first"};
  std::uint64_t seed = 42;
  std::size_t budget = 40;
  std::size_t starts = 8;
  std::string out = "-";
};

// Rows are computed independently and printed in (strategy, p, rank) order;
// numbers use fixed precision so reruns are byte-identical.
void run_sweep(const SweepConfig& cfg) {
  std::ostringstream csv;
  csv << "sign_strategy,p,plane_size,rank,eps_hat,best_start,gap,lambda2,inv_dim_perm,inv_dim_full\n";
  for (const auto& name : cfg.strategies) {
    const SignStrategy strategy = parse_sign_strategy(name);
    for (int p : cfg.primes) {
      require_prime(p);
      const auto family = standard_family(p, strategy, cfg.seed);
      const auto gap = spectral_gap(family);
      std::optional<AttemptCandidate> warm;
      for (std::size_t r : cfg.ranks) {
        MinimizeOptions opts;
        opts.rank = r;
        opts.seed = cfg.seed;
        opts.budget = cfg.budget;
        opts.starts = cfg.starts;
        if (warm && warm->rank() <= r) opts.warm_start = pad_candidate(*warm, r);
        const auto res = minimize_attempt(family, opts);
        warm = res.candidate;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%d,%zu,%zu,%.10f,%zu,%.10f,%.10f,%zu,%zu\n", name.c_str(), p,
                      plane_size(p), r, res.eps_hat, res.best_start, gap.gap, gap.lambda2,
                      gap.invariant_dim_permutations, gap.invariant_dim_full);
        csv << buf;
      }
    }
  }
  if (cfg.out == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + cfg.out);
    f << csv.str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SL3(Z) representation lab: projective planes, slicing bounds, spectral gaps"};
  app.require_subcommand(1);

  int p = 2;
  std::string strategy = "first";
  std::uint64_t seed = 0;

  auto* plane_cmd = app.add_subcommand("plane", "point table of P^2(F_p) as CSV");
  plane_cmd->add_option("--p", p, "prime modulus")->required();

  auto* rep_cmd = app.add_subcommand("rep", "generator and sign operators as sparse CSV");
  rep_cmd->add_option("--p", p, "prime modulus")->required();
  rep_cmd->add_option("--sign-strategy", strategy, "first|random")->check(CLI::IsMember({"first", "random"}));
  rep_cmd->add_option("--seed", seed, "seed for the random sign pattern");

  std::string preset = "tight";
  std::size_t blocks = 2;
  std::string out;
  auto* layout_cmd = app.add_subcommand("layout", "block layout manifest as JSON");
  layout_cmd->add_option("--preset", preset, "tight|remark")->check(CLI::IsMember({"tight", "remark"}));
  layout_cmd->add_option("--blocks", blocks, "number of blocks K")->required();
  layout_cmd->add_option("--out", out, "write the manifest to this file as well");

  std::size_t check_count = 100;
  bool check = false;
  auto* norms_cmd = app.add_subcommand("norms", "norm property suite");
  norms_cmd->add_flag("--check", check, "run the property suite");
  norms_cmd->add_option("--count", check_count, "random operators to test");
  norms_cmd->add_option("--seed", seed, "rng seed");

  std::string decomp_preset = "identity";
  std::string layout_file;
  auto* decomp_cmd = app.add_subcommand("decomp", "write a standard decomposition to a directory");
  decomp_cmd->add_option("--preset", decomp_preset, "identity|diag-units")
      ->check(CLI::IsMember({"identity", "diag-units"}));
  decomp_cmd->add_option("--layout", layout_file, "layout manifest")->required();
  decomp_cmd->add_option("--out", out, "output directory")->required();

  std::string decomp_file;
  std::size_t block = 0;
  auto* slice_cmd = app.add_subcommand("slice", "slice report for the plane part of one block");
  slice_cmd->add_option("--layout", layout_file, "layout manifest")->required();
  slice_cmd->add_option("--decomp", decomp_file, "decomposition manifest")->required();
  slice_cmd->add_option("--block", block, "block index k")->required();

  bool no_sign = false;
  auto* gap_cmd = app.add_subcommand("gap", "invariant dimensions and spectral gap");
  gap_cmd->add_option("--p", p, "prime modulus")->required();
  gap_cmd->add_flag("--no-sign", no_sign, "drop the sign unitary from the family");

  std::size_t rank = 1, budget = 100, starts = 16;
  auto* attempt_cmd = app.add_subcommand("attempt", "search for a low-residual rank-r candidate");
  attempt_cmd->add_option("--p", p, "prime modulus")->required();
  attempt_cmd->add_option("--rank", rank, "rank r")->required()->check(CLI::PositiveNumber);
  attempt_cmd->add_option("--seed", seed, "rng seed");
  attempt_cmd->add_option("--budget", budget, "alternating sweeps per start");
  attempt_cmd->add_option("--starts", starts, "number of starts")->check(CLI::PositiveNumber);

  SweepConfig sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "eps_hat(p, r) and gap(p) table as CSV");
  sweep_cmd->add_option("--primes", sweep.primes, "primes")->delimiter(',')->required();
  sweep_cmd->add_option("--ranks", sweep.ranks, "ranks")->delimiter(',')->required();
  sweep_cmd->add_option("--sign-strategies", sweep.strategies, "first,random")->delimiter(',');
  sweep_cmd->add_option("--seed", sweep.seed, "rng seed");
  sweep_cmd->add_option("--budget", sweep.budget, "alternating sweeps per start");
  sweep_cmd->add_option("--starts", sweep.starts, "number of starts")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sweep.out, "CSV path, - for stdout");

  double eps = 0.1;
  auto* falsify_cmd = app.add_subcommand("falsify", "run the slicing chain on a candidate diagonal");
  falsify_cmd->add_option("--layout", layout_file, "layout manifest")->required();
  falsify_cmd->add_option("--decomp", decomp_file, "decomposition manifest")->required();
  falsify_cmd->add_option("--eps", eps, "level eps")->required();
  falsify_cmd->add_option("--sign-strategy", strategy, "first|random")->check(CLI::IsMember({"first", "random"}));
  falsify_cmd->add_option("--seed", seed, "seed for the random sign pattern");

  std::vector<std::size_t> dims;
  bool unbounded = false;
  std::optional<std::size_t> bound;
  auto* classify_cmd = app.add_subcommand("classify", "bounded or unbounded block dimensions");
  classify_cmd->add_option("--dims", dims, "block dimensions")->delimiter(',')->required();
  classify_cmd->add_flag("--unbounded", unbounded, "the sequence continues without bound");
  classify_cmd->add_option("--bound", bound, "explicit bound N");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plane_cmd) {
      io::write_plane_csv(std::cout, ProjectivePlane(require_prime(p)));
    } else if (*rep_cmd) {
      io::write_family_csv(std::cout, standard_family(require_prime(p), parse_sign_strategy(strategy), seed));
    } else if (*layout_cmd) {
      const auto lp = parse_layout_preset(preset);
      const auto layout = build_layout(lp, blocks);
      auto j = io::to_json(layout);
      j["preset"] = preset;
      if (lp == LayoutPreset::Remark) j["discarded_dims"] = remark_discarded_dims(blocks);
      if (!out.empty()) io::write_layout(out, layout);
      print_json(j);
    } else if (*norms_cmd) {
      if (!check) {
        std::cerr << "norms: nothing to do (pass --check)\n";
        return 2;
      }
      return run_norm_checks(check_count, seed);
    } else if (*decomp_cmd) {
      const auto layout = io::read_layout(layout_file);
      const auto t = decomp_preset == "identity" ? TensorDecomposition::identity(layout)
                                                 : TensorDecomposition::diagonal_units(layout);
      std::cout << io::write_decomposition(out, t).string() << '\n';
    } else if (*slice_cmd) {
      const auto layout = io::read_layout(layout_file);
      const auto t = io::read_decomposition(decomp_file);
      if (!(t.layout() == layout)) throw Error(ErrorKind::Layout, "decomposition layout differs from --layout");
      if (block >= layout.block_count()) throw Error(ErrorKind::OutOfRange, "block index out of range");
      auto j = io::to_json(slice_mass(t, BasisSubset::plane_part(layout, block)));
      j["block"] = block;
      j["prime"] = layout.prime(block);
      print_json(j);
    } else if (*gap_cmd) {
      print_json(io::to_json(gap_report(require_prime(p), !no_sign)));
    } else if (*attempt_cmd) {
      MinimizeOptions opts;
      opts.rank = rank;
      opts.seed = seed;
      opts.budget = budget;
      opts.starts = starts;
      auto j = io::to_json(minimize_attempt(require_prime(p), opts));
      j["p"] = p;
      j["rank"] = rank;
      j["seed"] = seed;
      j["budget"] = budget;
      print_json(j);
    } else if (*sweep_cmd) {
      run_sweep(sweep);
    } else if (*falsify_cmd) {
      const auto layout = io::read_layout(layout_file);
      const auto t = io::read_decomposition(decomp_file);
      const auto sys = OmegaSystem::standard(layout, parse_sign_strategy(strategy), seed);
      print_json(io::to_json(falsify(t, sys, eps)));
    } else if (*classify_cmd) {
      print_json(io::to_json(classify(dims, unbounded, bound)));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
