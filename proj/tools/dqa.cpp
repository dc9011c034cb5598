#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dqa/cli.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Exact Poisson / Weyl algebra checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dqa::cli::kToolVersion);

  dqa::cli::Args args;
  std::string json_path;
  bool quiet = false;
  std::unordered_map<std::string, CLI::App *> subs;
  for (const auto &name : dqa::cli::commands()) {
    CLI::App *sub = app.add_subcommand(name);
    subs[name] = sub;
    sub->add_option("--input", args.input, "endomorphism file");
    sub->add_option("--degree-cap", args.degree_cap, "search or slice degree bound");
    sub->add_option("--seed", args.seed, "RNG seed")->capture_default_str();
    sub->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");
    sub->add_option("--p-max", args.p_max, "largest prime for kraus")->capture_default_str();
    sub->add_option("--tag", args.tag, "CJC, NJC, CPC, NPC, CDC or NDC");
    sub->add_option("--n", args.n, "half the number of generators");
    sub->add_option("--p", args.p, "prime characteristic");
    sub->add_option("--max-unknowns", args.max_unknowns, "inverse search budget per image")
        ->capture_default_str();
    sub->add_flag("--quiet", quiet, "suppress the text summary");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : dqa::cli::input_error;
  }

  std::string command;
  for (const auto &[name, sub] : subs)
    if (sub->parsed())
      command = name;

  dqa::cli::Result result = dqa::cli::run(command, args);
  if (!quiet && json_path != "-")
    (result.exit_code == dqa::cli::input_error ? std::cerr : std::cout) << result.text;
  std::string dump = result.report.dump(2) + "\n";
  if (json_path == "-") {
    std::cout << dump;
  } else if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return dqa::cli::input_error;
    }
    out << dump;
  }
  return result.exit_code;
}
