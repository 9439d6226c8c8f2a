#ifndef EIGENSCAN_CLI_APP_HPP
#define EIGENSCAN_CLI_APP_HPP

namespace eigenscan::cli {

// Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numerical
// degeneracy. One-line diagnostics go to stderr.
int run(int argc, const char* const* argv);

}  // namespace eigenscan::cli

#endif
