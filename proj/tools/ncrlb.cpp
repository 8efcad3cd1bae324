#include "ncrlb/experiments.hpp"

int main(int argc, char** argv) { return ncrlb::cli_main(argc, argv); }
