#include "cli.hpp"

int main(int argc, char** argv) { return heatcontent::cli::main_entry(argc, argv); }
