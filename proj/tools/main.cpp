#include "cli.hpp"

int main(int argc, char** argv) { return lerw::cli::main(argc, argv); }
