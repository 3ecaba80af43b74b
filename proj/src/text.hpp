#pragma once

#include <string>

namespace anitm::detail {

// Drops everything from '#' to the end of each line.
inline std::string strip_comments(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (!comment) out.push_back(c);
  }
  return out;
}

}  // namespace anitm::detail
