#ifndef SFCLUST_CLI_HPP
#define SFCLUST_CLI_HPP

namespace sfclust {

/// Entry point of the `sfclust` tool. Returns 0 on success, 1 on a numerical
/// failure and 2 on an input or validation error.
int run_cli(int argc, char** argv);

}  // namespace sfclust

#endif
