#include "domkit/cli.hpp"

int main(int argc, char** argv) { return domkit::cli::main_entry(argc, argv); }
