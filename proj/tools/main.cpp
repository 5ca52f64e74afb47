#include "ccspec/cli.hpp"

int main(int argc, char** argv) { return ccspec::cli::main_entry(argc, argv); }
