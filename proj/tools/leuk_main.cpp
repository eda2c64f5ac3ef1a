#include "leuk/cli/cli.hpp"

int main(int argc, char** argv) { return leuk::cli::run_cli(argc, argv); }
