#include "debranges/cli.hpp"

int main(int argc, char** argv) { return debranges::cli::main(argc, argv); }
