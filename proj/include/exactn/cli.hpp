#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exactn {

// Full command-line front end. Returns the process exit code:
// 0 success, 1 a requested verification failed, 2 usage or internal error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exactn
