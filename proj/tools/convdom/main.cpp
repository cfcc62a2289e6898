#include "cli.hpp"

int main(int argc, char** argv) { return convdom::cli::main_impl(argc, argv); }
