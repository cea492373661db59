#include "cli.hpp"

int main(int argc, char** argv) { return qdephase::cli::run(argc, argv); }
