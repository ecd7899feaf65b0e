#include "pjac/cli.hpp"

int main(int argc, char** argv) { return pjac::cli::main(argc, argv); }
