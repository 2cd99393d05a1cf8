#include "cli.hpp"

int main(int argc, char** argv) { return eqcheb::cli::run(argc, argv); }
