#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sclop {

/// Identifies one topic by its replication run and topic column, both 0-based.
struct TopicRef {
  std::int32_t run = 0;
  std::int32_t topic = 0;

  bool operator==(const TopicRef&) const = default;
};

/// Display label "r.k" with 1-based run and topic, e.g. "2.13".
std::string label_of(const TopicRef& ref);

/// Thrown for file-system and serialization failures (CLI maps these to exit 2).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sclop
