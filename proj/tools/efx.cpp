#include "efx/cli.hpp"

int main(int argc, char** argv) { return efx::cli::parse_and_dispatch(argc, argv); }
