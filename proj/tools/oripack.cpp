#include "oripack/cli.hpp"

int main(int argc, char** argv) { return oripack::cli::run(argc, argv); }
