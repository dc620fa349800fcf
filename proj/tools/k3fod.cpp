#include "k3fod/cli.hpp"

int main(int argc, char** argv) { return k3fod::cli::run(argc, argv); }
