#pragma once

#include "gridmix/core_types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gridmix::cli
{

inline constexpr int ExitOk = 0;
inline constexpr int ExitValidation = 1;
inline constexpr int ExitData = 2;

class MissingRunDir : public DataError
{
  public:
    using DataError::DataError;
};

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

// Lower-case hex SHA-256 of a file's bytes.
std::string file_sha256(std::string const& path);

} // namespace gridmix::cli
