#include "hsp/cli.hpp"

int main(int argc, char** argv) { return hsp::cli_main(argc, argv); }
