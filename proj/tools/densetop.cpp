#include "densetop/cli.hpp"

int main(int argc, char** argv) { return densetop::cli::main(argc, argv); }
