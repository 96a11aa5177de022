#pragma once

#include <stdexcept>
#include <string>

namespace greenseq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exit code 2 territory: malformed input documents
struct ParseError : Error {
  using Error::Error;
};

// exit code 3: a label that does not exist or is not exchangeable
struct InvalidIndex : Error {
  using Error::Error;
};

struct NotSkewSymmetrizable : Error {
  using Error::Error;
};

struct FrozenMutation : InvalidIndex {
  using InvalidIndex::InvalidIndex;
};

struct HasFrozen : Error {
  using Error::Error;
};

struct InvalidQuiver : Error {
  using Error::Error;
};

struct UnknownLevel : Error {
  using Error::Error;
};

struct WrongMode : Error {
  using Error::Error;
};

struct NotInXi : Error {
  using Error::Error;
};

struct NotContiguous : Error {
  NotContiguous(const std::string& msg, int prefix_len)
      : Error(msg), failing_prefix(prefix_len) {}
  int failing_prefix;
};

// exit code 5: a state the theory forbids; indicates a bug or corrupted input
struct SignIncoherent : Error {
  using Error::Error;
};

}  // namespace greenseq
