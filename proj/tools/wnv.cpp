#include "wnv/cli.hpp"

int main(int argc, char** argv) { return wnv::cli_main(argc, argv); }
