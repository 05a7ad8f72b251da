// cli.hpp
//
// `imnim` command line: table, classify, verify, beatty, play, serve.
// Exit status 0 on success, 1 on a failed verification, 2 on usage or
// input errors, 3 when a resource cap is hit.

#ifndef IMNIM_CLI_HPP
#define IMNIM_CLI_HPP

#include <iostream>

namespace imnim::cli {

inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResource = 3;

int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr,
        std::istream& in = std::cin);

}  // namespace imnim::cli

#endif  // IMNIM_CLI_HPP
