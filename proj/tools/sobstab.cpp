#include "sobstab/cli.hpp"

int main(int argc, char** argv) { return sobstab::cli::run(argc, argv); }
