#include "sasaki/app/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return sasaki::app::run_cli(argc, argv, std::cout, std::cerr); }
