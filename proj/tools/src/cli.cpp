#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "traintrack/folds.hpp"
#include "traintrack_tools/commands.hpp"

namespace traintrack::tools {

namespace {

bool write_file(const std::string& path, const std::string& content, std::ostream& out, std::ostream& err) {
  if (path == "-") {
    out << content;
    return true;
  }
  std::ofstream f(path);
  if (!f || !(f << content)) {
    err << "cannot write " << path << '\n';
    return false;
  }
  return true;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Train track maps, fold decompositions and the rank-3 principal automaton", "traintrack"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  std::uint64_t seed = 0;
  app.add_option("--pnp-bound", opts.pnp.max_length, "Longest leg tried by the Nielsen path search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--pnp-period", opts.pnp.max_period, "Largest period tried (0: lcm of Dg cycle lengths)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "Work-order shuffle seed for determinism checks");

  std::string file, json_out, dot_out;
  int rank = 3;

  auto* certify_cmd = app.add_subcommand("certify", "Train track, spectral, FIC and principal certificate");
  certify_cmd->add_option("file", file, "Map document")->required()->check(CLI::ExistingFile);
  certify_cmd->add_option("--json", json_out, "Write the JSON report ('-' for stdout)");

  auto* decompose_cmd = app.add_subcommand("decompose", "Stallings fold decomposition");
  decompose_cmd->add_option("file", file, "Map document")->required()->check(CLI::ExistingFile);
  decompose_cmd->add_option("--json", json_out, "Write the JSON report ('-' for stdout)");

  auto* automaton_cmd = app.add_subcommand("automaton", "Principal stratum automaton");
  automaton_cmd->require_subcommand(1);
  auto* build_cmd = automaton_cmd->add_subcommand("build", "Build the automaton and analyse node I");
  build_cmd->add_option("--rank", rank, "Rank")->capture_default_str();
  build_cmd->add_option("--dot", dot_out, "Write DOT");
  build_cmd->add_option("--json", json_out, "Write the JSON report ('-' for stdout)");

  auto* search_cmd = app.add_subcommand("search", "Exhaustive searches");
  search_cmd->require_subcommand(1);
  auto* single_cmd = search_cmd->add_subcommand("single-fold", "Principal single-fold maps of a rank");
  single_cmd->add_option("--rank", rank, "Rank")->required()->check(CLI::Range(3, 5));
  single_cmd->add_option("--json", json_out, "Write the JSON report ('-' for stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Acceptance drivers");
  verify_cmd->require_subcommand(1);
  auto* thm_a = verify_cmd->add_subcommand("theorem-a", "Minimal stretch factor steps");
  auto* thm_b = verify_cmd->add_subcommand("theorem-b", "Single-fold searches in ranks 3 to 5");
  for (auto* c : {thm_a, thm_b}) c->add_option("--json", json_out, "Write the JSON report ('-' for stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : parse_error;
  }
  if (*seed_opt) opts.seed = seed;

  Report report;
  std::string dot;
  try {
    if (*certify_cmd) {
      report = certify(read_map_document(file), opts);
    } else if (*decompose_cmd) {
      report = decompose(read_map_document(file), opts);
    } else if (*build_cmd) {
      report = automaton_build(rank, opts, dot_out.empty() ? nullptr : &dot);
    } else if (*single_cmd) {
      report = search_single_fold(rank, opts);
    } else if (*thm_a) {
      report = verify_theorem_a(opts);
    } else {
      report = verify_theorem_b(opts);
    }
  } catch (const ParseError& e) {
    err << file << ':' << e.what() << '\n';
    return parse_error;
  } catch (const DecompositionError& e) {
    err << "not a homotopy equivalence: " << e.what() << '\n';
    return precondition_failed;
  } catch (const DomainError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return precondition_failed;
  } catch (const StructuralError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return precondition_failed;
  }

  if (json_out != "-") out << report.text;
  if (!json_out.empty() && !write_file(json_out, report.json.dump(2) + "\n", out, err)) return precondition_failed;
  if (!dot_out.empty() && !write_file(dot_out, dot, out, err)) return precondition_failed;
  return report.exit_code;
}

}  // namespace traintrack::tools
