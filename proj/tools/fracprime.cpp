#include "fracprime/cli/commands.hpp"

int main(int argc, char** argv) { return fracprime::cli::run(argc, argv); }
