#pragma once

#include "plens/ir.hpp"
#include "plens/source.hpp"

namespace plens {

// Parses one source file into IR. Total: never fails on syntax; constructs
// outside the supported subset are skipped statement-by-statement, each skip
// recorded as a diagnostic on the returned module.
IRModule parse_file(const SourceFile& file);

}  // namespace plens
