#include "reflectra/cli.hpp"

int main(int argc, char** argv) { return reflectra::cli::run(argc, argv); }
