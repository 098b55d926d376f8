#include "sfclust/cli.hpp"

int main(int argc, char** argv) { return sfclust::run_cli(argc, argv); }
