#pragma once

#include <stdexcept>
#include <string>

namespace offord {

// Bad user input: malformed files, dimension mismatches, out-of-range parameters.
// The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured enumeration cap would be exceeded. Never silently truncated.
// The CLI maps this to exit code 3. The message names both the cap and the
// observed requirement.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace offord
