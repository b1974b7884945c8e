#include "medsil/cli.hpp"

int main(int argc, char** argv) { return medsil::cli::main(argc, argv); }
