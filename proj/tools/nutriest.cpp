#include "nutriest/cli.hpp"

int main(int argc, char** argv) { return nutriest::cli::run(argc, argv); }
