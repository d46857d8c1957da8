#include "gw/cli.hpp"

int main(int argc, char** argv) { return gw::cli::dispatch(argc, argv); }
