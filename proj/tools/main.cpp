#include "cli.hpp"

int main(int argc, char** argv) { return cfsym::cli::run(argc, argv); }
