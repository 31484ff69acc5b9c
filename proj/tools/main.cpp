#include "tsyb/cli.hpp"

int main(int argc, char** argv) { return tsyb::cli_main(argc, argv); }
