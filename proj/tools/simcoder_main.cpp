#include "simcoder/cli/commands.hpp"

int main(int argc, char** argv) { return simcoder::cli::run_cli(argc, argv); }
