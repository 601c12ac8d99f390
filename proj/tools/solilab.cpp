#include "solilab/cli.hpp"

int main(int argc, char** argv) { return solilab::cli::main(argc, argv); }
