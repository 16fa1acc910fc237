#include "testspace/cli.hpp"

int main(int argc, char** argv) { return testspace::run_cli(argc, argv); }
