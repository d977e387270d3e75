#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "tuatara/enclosure.hpp"

namespace tuatara::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kComputation = 2, kBudget = 3 };

/// Runs one command line (args excludes the program name). Data goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Decimal digits shared by both ends of the enclosure, at most `max_digits`
/// after the point, followed by "..."; "-" when not even the integer part is
/// determined.
std::string certified_decimal(const Enclosure& e, std::size_t max_digits);

/// Binary digits from tuatara::digits in the form "int.bits...", or "-".
std::string certified_binary(const Enclosure& e, std::size_t max_digits);

/// Rows with a header, printed as aligned columns or as CSV.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void print(std::ostream& out, bool csv) const;
};

}  // namespace tuatara::cli
