#include "padic_kas/cli.hpp"

int main(int argc, char** argv) { return padic_kas::cli_dispatch(argc, argv); }
