#pragma once

#include <stdexcept>
#include <string>

namespace sgc {

enum class Status {
  Ok = 0,
  InvalidArgument,
  IsolatedNode,
  IndefinitePencil,
  GuardExceeded,
  IoError,
  Internal,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
public:
  Error(Status code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Status code() const noexcept { return code_; }

private:
  Status code_;
};

[[noreturn]] inline void fail(Status code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Status code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace sgc
