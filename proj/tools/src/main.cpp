#include "cymod_cli/cli.hpp"

int main(int argc, char** argv) { return cymod::cli::run(argc, argv); }
