#include "explab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using namespace explab::cli;
  CLI::App app{"Classify time-dependent exponents and verify their group-level structure"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string out_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_flag("--timing", cfg.timing, "include wall-clock timing in the report");
  };

  auto* classify = app.add_subcommand("classify", "cocycles modulo coboundaries of an algebra");
  classify->add_option("--algebra", cfg.algebra, "galilean | milne:m | phase-space:n | algebra file");
  classify->add_option("--degree", cfg.degree, "auto or a degree bound");
  common(classify);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", cfg.suite, "galilean | milne:m | bundle | schrodinger | h-group")->required();
  verify->add_option("--samples", cfg.samples, "random samples per identity");
  verify->add_option("--seed", cfg.seed, "random seed");
  common(verify);

  auto* exponent = app.add_subcommand("exponent", "extract infinitesimal exponents from a phase");
  exponent->add_option("--group", cfg.group, "galilean | milne:m");
  exponent->add_option("--theta", cfg.theta, "galilean-mass:m | milne-schrodinger:m");
  auto* pair = exponent->add_option("--pair", cfg.pair, "two generator labels a,b");
  auto* all = exponent->add_flag("--all-pairs", cfg.all_pairs, "every generator pair");
  pair->excludes(all);
  exponent->add_option("--event", cfg.event, "evaluation event x,y,z,t");
  common(exponent);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : bad_input;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "exponent" && cfg.pair.empty() && !cfg.all_pairs) {
    std::cerr << "exponent needs --pair a,b or --all-pairs\n";
    return bad_input;
  }

  const Report r = run(cfg);
  const std::string rendered = render(r, cfg.format);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return bad_input;
    }
    out << rendered;
  }
  if (r.exit_code != ok && r.exit_code != check_failed) std::cerr << r.text;
  return r.exit_code;
}
