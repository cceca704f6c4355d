#include "decisive/cli.hpp"

int main(int argc, char** argv) { return decisive::cli::main(argc, argv); }
