#pragma once

#include <stdexcept>
#include <string>

namespace commscope {

enum class Errc {
  parse,
  self_loop,
  unknown_node,
  duplicate_assignment,
  incomplete_partition,
  unknown_community,
  empty_set,
  type_mismatch,
  degenerate_table,
  insufficient_data,
  absent,
  config,
  io,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library. Input and configuration problems map to
// exit code 2 in the CLI; anything else escaping is an internal error.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace commscope
