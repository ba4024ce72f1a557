#include "plens/diagnostics.hpp"

#include <sstream>

namespace plens {

std::string to_string(const Diagnostic& d) {
  std::ostringstream os;
  if (d.file.empty()) {
    os << d.kind << ": " << d.reason;
  } else {
    os << d.file << ":" << d.line << ":" << d.col << ": " << d.kind << ": " << d.reason;
  }
  return os.str();
}

}  // namespace plens
