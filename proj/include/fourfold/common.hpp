#pragma once

#include <stdexcept>
#include <string>

namespace fourfold {

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: unreadable word syntax, bad JSON, unknown script op.
struct parse_error : error {
  explicit parse_error(const std::string& what) : error(what) {}
};

// An operation was invoked outside its contract (genus mismatch, cyclic
// identification chain, ...).
struct precondition_error : error {
  explicit precondition_error(const std::string& what) : error(what) {}
};

// A declared object failed consistency validation.
struct validation_error : error {
  explicit validation_error(const std::string& what) : error(what) {}
};

// The basic-class enumerator could not bound some coefficient.
struct unbounded_error : error {
  explicit unbounded_error(const std::string& what) : error(what) {}
};

}  // namespace fourfold
