#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <string>

#include "greenseq/errors.hpp"
#include "json.hpp"

namespace greenseq {

// Entries can grow quickly under repeated mutation, so all matrix arithmetic
// is done over arbitrary-precision integers.
using Int = boost::multiprecision::cpp_int;

inline nlohmann::json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

inline Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) {
    return Int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError("not an integer: " + j.dump());
    }
  }
  throw ParseError("expected integer, got " + j.dump());
}

}  // namespace greenseq
