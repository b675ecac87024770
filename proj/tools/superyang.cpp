// SPDX-License-Identifier: MIT
#include "superyang/cli.hpp"

int main(int argc, char** argv) { return superyang::cli_main(argc, argv); }
