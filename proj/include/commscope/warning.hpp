#pragma once

#include <string>
#include <vector>

namespace commscope {

struct Warning {
  std::string code;
  std::string message;

  bool operator==(const Warning&) const = default;
};

using Warnings = std::vector<Warning>;

}  // namespace commscope
