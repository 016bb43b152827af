#include "cli.hpp"

int main(int argc, char** argv) { return mgeom::cli::main_entry(argc, argv); }
