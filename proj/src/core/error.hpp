// Copyright 2026  The pemiu-toolkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED.  See the Apache 2 License for the specific
// language governing permissions and limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "pemiu.h"

namespace pemiu {

// Exceptions carry the C API status so the boundary layer never has to guess.
class Error : public std::runtime_error {
 public:
  Error(pemiu_status code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  pemiu_status code() const noexcept { return code_; }

 private:
  pemiu_status code_;
};

// Byte offset points at where the data ended or where the bad field starts.
class MalformedFileError : public Error {
 public:
  MalformedFileError(std::string msg, std::size_t byte_offset)
      : Error(PEMIU_E_MALFORMED_FILE, std::move(msg)), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

[[noreturn]] inline void fail(pemiu_status code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace pemiu
