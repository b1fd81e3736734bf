#pragma once

#include <stdexcept>
#include <string>

namespace fairspread {

// Malformed or inconsistent input data (edge/attribute files, CSVs).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid experiment configuration (unknown algorithm, bad field values).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fairspread
