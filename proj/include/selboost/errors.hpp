#pragma once

#include <stdexcept>
#include <string>

namespace selboost {

/// Invalid configuration or parameter domain violation (CLI exit code 2).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data, including model files (CLI exit code 3).
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

/// Failure inside training itself (CLI exit code 4).
class train_error : public std::runtime_error {
 public:
  explicit train_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace selboost
