#include "cli.hpp"

int main(int argc, char** argv) { return pdacc::cli::run(argc, argv); }
