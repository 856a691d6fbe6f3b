#include "risched/harness.hpp"

int main(int argc, char** argv) { return risched::cli_main(argc, argv); }
