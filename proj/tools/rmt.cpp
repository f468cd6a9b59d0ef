#include "rmt_cli.hpp"

int main(int argc, char** argv) { return rmt::cli::run(argc, argv); }
