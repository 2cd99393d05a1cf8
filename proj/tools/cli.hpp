#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eqcheb/curves.hpp"

namespace eqcheb::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kUnconverged = 2 };

// "1,0,-1" or "1+2i,-i,0.5" -> complex coefficients, highest degree first
std::vector<cplx> parse_coefficients(const std::string& text);
cplx parse_complex(const std::string& token);
std::vector<double> parse_doubles(const std::string& text);

// Runs one subcommand. argv[0] is the program name. Messages go to `out`/`err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace eqcheb::cli
