#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "expdiff/cli/commands.hpp"
#include "expdiff/parallel.hpp"

int main(int argc, char** argv) {
  using namespace expdiff;
  CLI::App app{"Exponential differential equations of algebraic tori: exact checks and constructions"};
  std::string command, input = "-";
  CommandOptions o;
  int threads = 0;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("input", input, "Input file in the DSL; '-' reads stdin");
  app.add_option("--point", o.point, "Point name");
  app.add_option("--variety", o.variety, "Variety name");
  app.add_option("--sub", o.sub, "Substructure name");
  app.add_option("--over", o.over, "Base substructure name");
  app.add_option("--left", o.left, "First substructure of an amalgam");
  app.add_option("--right", o.right, "Second substructure of an amalgam");
  app.add_option("--base", o.base, "Factor base name");
  app.add_option("--mode", o.mode, "Rotundity mode")->check(CLI::IsMember({"plain", "perfect", "strong"}));
  app.add_option("--poly", o.polys, "Polynomial for rabinovich (repeatable)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--bound", o.bound, "Search bound N")->capture_default_str();
  app.add_option("--seed", o.seed, "Hyperplane seed")->capture_default_str();
  app.add_flag("--absolute", o.absolute, "Test each projection separately in free");
  app.add_option("--budget-degree", o.budget.max_degree, "Groebner degree cap")->capture_default_str();
  app.add_option("--budget-pairs", o.budget.max_pairs, "Groebner pair cap")->capture_default_str();
  app.add_option("--threads", threads, "1 runs serial kernels; 0 keeps the OpenMP default");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (threads == 1) {
    set_default_exec(Exec::Serial);
  } else {
    if (threads > 1) omp_set_num_threads(threads);
    set_default_exec(Exec::Parallel);
  }

  std::string text;
  if (command != "selftest") {
    if (input == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(input, std::ios::binary);
      if (!in) {
        std::cout << "command: " << command << "\nerror: INVALID_ARGUMENT\nreason: cannot open " << input << "\n";
        return 2;
      }
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
  }
  CommandResult r = run_on_text(command, text, o);
  std::cout << r.report;
  return r.exit_code;
}
