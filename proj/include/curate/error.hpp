#pragma once

#include <stdexcept>
#include <string>

namespace curate {

// Bad user input: malformed config, unreadable path, parameter out of range.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failure while a stage is running (I/O, malformed record, classifier outage).
class StageError : public std::runtime_error {
public:
    explicit StageError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace curate
