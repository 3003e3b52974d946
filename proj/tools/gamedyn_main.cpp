#include "gamedyn/harness.hpp"

int main(int argc, char** argv) { return gamedyn::run_cli(argc, argv); }
