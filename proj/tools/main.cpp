#include "ecoscope/cli.hpp"

int main(int argc, char** argv) { return ecoscope::cli::run_main(argc, argv); }
