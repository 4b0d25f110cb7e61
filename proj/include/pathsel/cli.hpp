#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pathsel {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitExhausted = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitParse = 3;

// args[0] is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathsel
