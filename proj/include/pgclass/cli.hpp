#pragma once

// The pgclass command line, callable in process.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgclass/char_table.hpp"
#include "pgclass/classify.hpp"

namespace pgclass {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitInconsistency = 2, kExitSuiteFailure = 3 };

/// args excludes the program name. Normal output goes to out, diagnostics and
/// progress to err. With --json, out receives one JSON document on every path,
/// errors included.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::ordered_json to_json(const ClassificationReport& R);
/// Classes with representative exponent vectors and sizes; rows with degrees
/// and values as cyclotomic strings.
nlohmann::ordered_json to_json(const CharacterTable& T);

}  // namespace pgclass
