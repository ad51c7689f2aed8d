#include "varj/cli.hpp"

int main(int argc, char** argv) { return varj::run_cli(argc, argv); }
