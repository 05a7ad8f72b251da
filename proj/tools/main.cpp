#include "imnim/cli.hpp"

int main(int argc, char** argv) { return imnim::cli::run(argc, argv); }
