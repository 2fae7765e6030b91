#include "jumpsift/cli.hpp"

int main(int argc, char** argv) { return jumpsift::cli_dispatch(argc, argv); }
