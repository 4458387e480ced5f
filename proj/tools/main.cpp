#include "commands.hpp"

int main(int argc, char** argv) { return cyclecent::cli::run({argv, argv + argc}); }
