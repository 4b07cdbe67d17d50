// Command-line front end: graph generation, code construction, property-suite
// verification, decoding trials and scaling benchmarks.
//
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 infeasible oracle.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssflip/errors.hpp"
#include "ssflip/harness.hpp"
#include "ssflip/oracle.hpp"

using nlohmann::json;
using namespace ssflip;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

harness::TrialSide parse_side(const std::string& s) {
  if (s == "x" || s == "X") return harness::TrialSide::X;
  if (s == "z" || s == "Z") return harness::TrialSide::Z;
  if (s == "both") return harness::TrialSide::Both;
  throw CLI::ValidationError("--side", "expected x, z or both");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypergraph-product codes from biregular expander graphs, with "
               "linear-time small-set-flip decoding"};
  app.require_subcommand(1);

  // --- gen-graph ---
  auto* gen = app.add_subcommand("gen-graph", "sample a random biregular bipartite graph");
  uint32_t na = 12, nb = 9, da = 3, db = 4;
  uint64_t seed = 1;
  std::string out_path;
  gen->add_option("--na", na, "left vertex count")->required();
  gen->add_option("--nb", nb, "right vertex count")->required();
  gen->add_option("--da", da, "left degree")->required();
  gen->add_option("--db", db, "right degree")->required();
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--out", out_path, "output graph file")->required();

  // --- build-code ---
  auto* build = app.add_subcommand("build-code", "build the CSS code and report parameters");
  std::string build_graph, build_out;
  build->add_option("--graph", build_graph, "input graph file")->required();
  build->add_option("--out", build_out, "output JSON header (default: stdout)");

  // --- verify ---
  auto* verify = app.add_subcommand("verify", "run the property suite on a graph");
  std::string verify_graph, verify_out;
  harness::VerifyOptions vopt;
  verify->add_option("--graph", verify_graph, "input graph file")->required();
  verify->add_option("--out", verify_out, "output JSON report (default: stdout)");
  verify->add_option("--delta-a", vopt.expansion.delta_a, "left expansion delta");
  verify->add_option("--delta-b", vopt.expansion.delta_b, "right expansion delta");
  verify->add_option("--subset-cap", vopt.expansion.subset_cap,
                     "max subset size for exhaustive expansion checks");
  verify->add_option("--samples", vopt.samples, "sampled trials per randomized check");
  verify->add_option("--seed", vopt.seed, "RNG seed for sampled checks");

  // --- simulate ---
  auto* sim = app.add_subcommand("simulate", "run decoding trials");
  std::string sim_graph, sim_out, sim_format = "json", sim_side = "both",
              sim_model = "random";
  harness::TrialConfig cfg;
  sim->add_option("--graph", sim_graph, "input graph file")->required();
  sim->add_option("--model", sim_model, "error model: random | exhaustive");
  sim->add_option("--wmin", cfg.weight_min, "minimum error weight");
  sim->add_option("--wmax", cfg.weight_max, "maximum error weight");
  sim->add_option("--trials", cfg.trials_per_weight, "trials per weight (random model)");
  sim->add_option("--seed", cfg.master_seed, "master seed");
  sim->add_option("--side", sim_side, "error side: x | z | both");
  sim->add_option("--threads", cfg.threads, "worker threads");
  sim->add_option("--format", sim_format, "output format: json | csv");
  sim->add_option("--out", sim_out, "output file (default: stdout)");
  sim->add_option("--delta-a", cfg.expansion.delta_a, "left expansion delta");
  sim->add_option("--delta-b", cfg.expansion.delta_b, "right expansion delta");
  sim->add_option("--subset-cap", cfg.expansion.subset_cap,
                  "max subset size for expansion certification");
  double assume_ga = -1, assume_gb = -1;
  sim->add_option("--assume-gamma-a", assume_ga, "assert gamma_A instead of measuring");
  sim->add_option("--assume-gamma-b", assume_gb, "assert gamma_B instead of measuring");

  // --- bench ---
  auto* bench = app.add_subcommand("bench", "decode-time scaling across sizes");
  harness::BenchConfig bcfg;
  std::string bench_sizes = "12,16,24,36", bench_out;
  bench->add_option("--sizes", bench_sizes, "comma-separated n_A values");
  bench->add_option("--da", bcfg.delta_a, "left degree");
  bench->add_option("--db", bcfg.delta_b, "right degree");
  bench->add_option("--weight", bcfg.fixed_weight, "fixed error weight");
  bench->add_option("--trials", bcfg.trials, "trials per size");
  bench->add_option("--seed", bcfg.seed, "RNG seed");
  bench->add_flag("--sqrt-weight,!--no-sqrt-weight", bcfg.sqrt_weight,
                  "also run weight ~ sqrt(n)");
  bench->add_option("--out", bench_out, "output JSON (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the error message
    return rc == 0 ? 0 : 2;     // --help/--version exit cleanly
  }

  try {
    if (gen->parsed()) {
      const BipartiteGraph g = generate_biregular(na, nb, da, db, seed);
      write_graph_file(out_path, g);
      std::cerr << "wrote " << out_path << " (" << na << "x" << nb << ", degrees " << da << "/"
                << db << ")\n";
      return 0;
    }

    if (build->parsed()) {
      const BipartiteGraph g = read_graph_file(build_graph);
      const CssCode code = build_hypergraph_product(g);
      const json header{{"schema", 1},
                        {"graph_file", build_graph},
                        {"n_A", g.n_a},
                        {"n_B", g.n_b},
                        {"delta_A", g.delta_a},
                        {"delta_B", g.delta_b},
                        {"n", code.n},
                        {"k", code_dimension(code)},
                        {"row_weight", code.row_weight()}};
      if (build_out.empty()) {
        std::cout << header.dump(2) << '\n';
      } else {
        open_out(build_out) << header.dump(2) << '\n';
      }
      return 0;
    }

    if (verify->parsed()) {
      std::vector<harness::CheckResult> checks;
      try {
        const BipartiteGraph g = read_graph_file(verify_graph);
        checks = harness::run_verify(g, vopt);
      } catch (const std::invalid_argument& ex) {
        // Invalid input files are an invariant failure with a witness.
        checks.push_back({"graph-invariants", harness::CheckResult::Status::Fail, ex.what()});
      }
      const json report = harness::verify_report_json(checks);
      if (verify_out.empty()) {
        std::cout << report.dump(2) << '\n';
      } else {
        open_out(verify_out) << report.dump(2) << '\n';
      }
      return harness::verify_exit_code(checks);
    }

    if (sim->parsed()) {
      cfg.side = parse_side(sim_side);
      if (sim_model == "exhaustive")
        cfg.model = harness::ErrorModel::ExhaustiveUpToWeight;
      else if (sim_model == "random")
        cfg.model = harness::ErrorModel::RandomSupport;
      else
        throw CLI::ValidationError("--model", "expected random or exhaustive");
      if (assume_ga >= 0) cfg.expansion.assume_gamma_a = assume_ga;
      if (assume_gb >= 0) cfg.expansion.assume_gamma_b = assume_gb;

      const BipartiteGraph g = read_graph_file(sim_graph);
      const CssCode code = build_hypergraph_product(g);
      const harness::SimulationResult result = harness::run_simulation(code, cfg);

      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!sim_out.empty()) {
        file = open_out(sim_out);
        out = &file;
      }
      if (sim_format == "csv") {
        *out << harness::csv_header() << '\n';
        for (const auto& r : result.records) *out << harness::record_to_csv(r) << '\n';
        *out << "#summary " << result.summary.dump() << '\n';
      } else {
        for (const auto& r : result.records)
          *out << harness::record_to_json(r).dump() << '\n';
        *out << result.summary.dump() << '\n';
      }
      return 0;
    }

    if (bench->parsed()) {
      bcfg.sizes_n_a.clear();
      std::stringstream ss(bench_sizes);
      std::string tok;
      while (std::getline(ss, tok, ','))
        bcfg.sizes_n_a.push_back(static_cast<uint32_t>(std::stoul(tok)));
      const json report = harness::run_bench(bcfg);
      if (bench_out.empty()) {
        std::cout << report.dump(2) << '\n';
      } else {
        open_out(bench_out) << report.dump(2) << '\n';
      }
      return 0;
    }
  } catch (const CLI::ValidationError& ex) {
    std::cerr << "usage error: " << ex.what() << '\n';
    return 2;
  } catch (const InfeasibleError& ex) {
    std::cerr << "infeasible: " << ex.what() << '\n';
    return 3;
  } catch (const GenerationError& ex) {
    std::cerr << "generation failure: " << ex.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "usage error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 2;
}
