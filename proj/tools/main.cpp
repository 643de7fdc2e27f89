#include "cavityforge/cli.hpp"

int main(int argc, char** argv) { return cavityforge::cli::run(argc, argv); }
