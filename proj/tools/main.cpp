#include "commands.hpp"

int main(int argc, char** argv) { return mti::cli::run(argc, argv); }
