#pragma once

// Batch command-line front end. Exit codes: 0 success, 1 parse or
// validation failure, 2 certificate failure, 3 resource bound exceeded.
//
// With `--format records` every result is one JSON object per line on the
// output stream; errors become records as well and nothing is written to
// the error stream.

#include <ostream>
#include <string>
#include <vector>

namespace soalg::cli {

enum Exit { kOk = 0, kInvalid = 1, kCertificate = 2, kResource = 3 };

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace soalg::cli
