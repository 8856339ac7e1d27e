#pragma once

// Command-line front end. Exit codes: 0 success or PASS, 1 FAIL, 2 usage,
// validation or budget errors.

#include <iosfwd>
#include <string>
#include <vector>

#include "moore/core.hpp"

namespace moore::cli
{

class UnknownProperty : public Error
{
public:
    using Error::Error;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_error = 2;

/// `args` excludes the program name.
int run_cli( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace moore::cli
