#include "pandemic/cli.hpp"

int main(int argc, char** argv) { return pandemic::run_cli(argc, argv); }
