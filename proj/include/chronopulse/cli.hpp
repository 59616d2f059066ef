#ifndef CHRONOPULSE_CLI_HPP
#define CHRONOPULSE_CLI_HPP

#include <iostream>
#include <string>
#include <vector>

namespace chronopulse {

/// Command-line entry point. Subcommands: simulate, correct, fit, infer,
/// stats, experiment. Returns 0 on success, 1 on a domain/data error and 2 on
/// a usage error. All output files are deterministic functions of the flags,
/// configuration and seed.
int cli_main(std::vector<std::string> args, std::ostream& out = std::cout,
             std::ostream& err = std::cerr);

}  // namespace chronopulse

#endif
