#include "sylsep/cli.hpp"

int main(int argc, char** argv) { return sylsep::cli::run(argc, argv); }
