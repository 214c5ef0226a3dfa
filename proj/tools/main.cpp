#include <iostream>

#include "ppmhd/run.hpp"

int main(int argc, char** argv) {
  using namespace ppmhd;
  RunConfig cfg;
  try {
    bool help = false;
    std::string help_text;
    cfg = parse_config(argc, argv, &help, &help_text);
    if (help) {
      std::cout << help_text;
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n(run with --help for the list of options)\n";
    return kExitUsage;
  }
  try {
    const RunResult r = run(cfg, &std::cerr);
    if (r.exit_code != kExitOk) std::cerr << r.message << '\n';
    return r.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
