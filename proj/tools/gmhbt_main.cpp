#include "gmhbt/cli.hpp"

int main(int argc, char** argv) { return gmhbt::cli::run(argc, argv); }
