#include "commands.hpp"

int main(int argc, char** argv) { return ilap::cli::run(argc, argv); }
