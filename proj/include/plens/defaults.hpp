#pragma once

#include <string>

namespace plens::defaults {

// Shipped data files, embedded at build time from data/.
const std::string& catalog_json();
const std::string& rules_json();
const std::string& libraries_json();

}  // namespace plens::defaults
