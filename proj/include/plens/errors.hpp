#pragma once

#include <stdexcept>
#include <string>

namespace plens {

// Error taxonomy for configuration/input failures vs broken internal invariants.
// The CLI maps Internal to exit code 3 and everything else to exit code 2.
class ScanError : public std::runtime_error {
 public:
  enum class Kind {
    Schema,          // malformed catalog/rule/library file
    DuplicateEntry,  // two catalog entries with identical pattern+origin
    BadRegex,        // rule pattern failed to compile
    RootNotFound,    // scan root missing or not a directory
    UnreadableFile,  // I/O failure reading a source file
    ZeroTotal,       // proportion over an empty method set
    Config,          // bad CLI/flag combination
    Internal,        // invariant violation; a bug, not a user error
  };

  ScanError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace plens
