#pragma once

// Command-line driver.  Exit codes: 0 success, 1 domain error (structured
// error object on `err`), 2 usage or input parse error.

#include <iosfwd>
#include <string>
#include <vector>

namespace seqforms::cli {

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqforms::cli
