#include "calgeo/cli.hpp"

int main(int argc, char** argv) { return calgeo::cli::main_entry(argc, argv); }
