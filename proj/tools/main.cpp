#include "cli.hpp"

int main(int argc, char** argv) { return hypcyl::cli::run(argc, argv); }
