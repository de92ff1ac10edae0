#include "greenseq/cli/cli.hpp"

int main(int argc, char** argv) { return greenseq::cli::run(argc, argv); }
