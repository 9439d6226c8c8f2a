#include "cli_app.hpp"

int main(int argc, char** argv) { return eigenscan::cli::run(argc, argv); }
