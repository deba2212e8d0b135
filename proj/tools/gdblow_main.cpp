#include "gdblow/cli.hpp"

int main(int argc, char** argv) { return gdblow::cli::run(argc, argv); }
