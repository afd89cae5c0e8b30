#include "qsp/cli.hpp"

int main(int argc, char** argv) { return qsp::cli::main(argc, argv); }
