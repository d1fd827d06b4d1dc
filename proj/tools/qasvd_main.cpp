#include "qasvd/cli.hpp"

int main(int argc, char** argv) { return qasvd::run_cli(argc, argv); }
