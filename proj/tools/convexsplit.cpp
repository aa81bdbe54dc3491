// convexsplit: order types, crossing numbers and convex decompositions of
// polygonal paths and sampled curves, with JSON reports.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "convexsplit/cli/report.hpp"

namespace cs = convexsplit::cli;

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("CONVEXSPLIT_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "ignoring invalid CONVEXSPLIT_THREADS='" << env << "'\n";
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex decomposition and crossing-number tool for polygonal paths and curves"};
  app.require_subcommand(1, 1);

  cs::RunConfig cfg;
  std::optional<unsigned> threads;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out-json", cfg.out_json, "Write the JSON report here (default: stdout)");
  };
  auto add_points = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "CSV or JSON point file");
    sub->add_option("--points", cfg.points, "Inline points \"x,y;x,y;...\"");
    sub->add_option("--dim", cfg.dim, "Expected dimension")->check(CLI::PositiveNumber);
  };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--oracle-budget", cfg.oracle_budget, "Largest n given to exhaustive oracles");
    sub->add_option("--threads", threads, "Worker threads (env CONVEXSPLIT_THREADS)")
        ->check(CLI::PositiveNumber);
  };
  auto add_curve = [&](CLI::App* sub) {
    sub->add_option("--curve", cfg.curve,
                    "moment | quintic | dented_arc | poly, or an inline JSON curve spec");
    sub->add_option("--input", cfg.input, "JSON curve spec file");
    sub->add_option("--d", cfg.curve_d, "Moment curve dimension");
    sub->add_option("--dents", cfg.dents, "Number of dents of dented_arc");
    sub->add_option("--depth", cfg.depth, "Dent depth of dented_arc (rational)");
    sub->add_option("--eps", cfg.eps, "Sampling resolution (rational, e.g. 1/100)")->required();
    sub->add_option("--seed", cfg.seed, "Jitter seed");
  };

  struct Entry {
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {"verify-gp", "Check general position"},
      {"homog", "Order-type homogeneity"},
      {"flip", "Flip property (points or an abstract k-sequence)"},
      {"crossings", "Exact maximum number of hyperplane crossings"},
      {"decompose", "Minimal decomposition into convex pieces"},
      {"sample", "Epsilon-sample a curve in general position"},
      {"decompose-curve", "Sample a curve and decompose it into convex arcs"},
      {"reduce", "Reduced subsequence of a k-sequence with its checks"},
      {"bounds", "Block-count bounds c(k)"},
      {"ramsey", "Longest homogeneous subsequence and super-homogeneous extraction"},
  };
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub);
    std::string name = e.name;
    if (name == "sample" || name == "decompose-curve") {
      add_curve(sub);
      add_oracle(sub);
      sub->add_option("--out-svg", cfg.out_svg, "Write an SVG plot (d = 2)");
    } else if (name == "bounds") {
      sub->add_option("--k", cfg.k_range, "k or a range A..B");
    } else {
      add_points(sub);
      if (name == "crossings" || name == "ramsey") add_oracle(sub);
      if (name == "decompose") sub->add_option("--out-svg", cfg.out_svg, "Write an SVG plot (d = 2)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cs::exit_parse;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.threads = threads.value_or(default_threads());

  auto res = cs::run(cfg);
  if (!cfg.out_json) std::cout << res.report.dump(2) << "\n";
  std::string problem;
  if (!cs::write_outputs(cfg, res, &problem)) {
    std::cerr << problem << "\n";
    return cs::exit_failure;
  }
  if (res.exit_code != cs::exit_ok && res.report.contains("error")) {
    std::cerr << "error: " << res.report["error"]["message"].get<std::string>() << "\n";
  }
  return res.exit_code;
}
