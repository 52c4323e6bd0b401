#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coalg {

// Runs one CLI invocation.  Exit codes: 0 success, 1 domain errors
// (NotWellFounded, NotWellPointed, functor mismatch, decode failures),
// 2 I/O or parse errors.  Output is byte-deterministic for fixed inputs.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace coalg
