#include "gsds/cli.hpp"

int main(int argc, char** argv) { return gsds::run_cli(argc, argv); }
