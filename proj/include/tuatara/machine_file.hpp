#pragma once

#include <string>
#include <string_view>

#include "tuatara/machines.hpp"

namespace tuatara {

/// Line-oriented machine descriptions. A file holds one or more blocks
///
///   machine NAME
///   kind finite | builtin | construction
///   ...body...
///
/// finite:        domain BITS|eps, map BITS -> BITS, prefix-free
/// builtin:       generator all_strings | lukasiewicz | iota [STEPS] | geometric K,
///                plus domain lines (extra strings, geometric only)
/// construction:  construct KIND NAME[,NAME...], plus one bound a/b per member
///                for universal_convergent
///
/// Operands name earlier blocks; the last block is the machine the file
/// describes. '#' starts a comment. Errors are ParseError with a line number.
MachineSpec parse_machine_file(std::string_view text);

/// Inverse of parse_machine_file: blocks m1, m2, ... with operands first.
std::string write_machine_file(const MachineSpec& m);

}  // namespace tuatara
