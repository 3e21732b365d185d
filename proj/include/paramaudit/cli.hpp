#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paramaudit::cli {

// Exit codes: 0 result or certificate, 2 honest refusal, 1 usage or runtime error.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kRefusal = 2;

// Runs one subcommand; JSON results go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace paramaudit::cli
