#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qconic::cli
{

enum ExitCode : int {
    ok = 0,
    failure = 1,
    usage = 2,
    nonpositive_denominator = 3,
    io_error = 4,
    oracle_failure = 5,
};

/// Entry point shared by main() and the tests. args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qconic::cli
