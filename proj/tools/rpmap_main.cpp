#include "rpmap/harness.hpp"

int main(int argc, char** argv) { return rpmap::cli_main(argc, argv); }
