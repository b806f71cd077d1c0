//
// Copyright 2026 The SIFL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SIFL_CORE_ERRORS_HPP_
#define SIFL_CORE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sifl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SIFL_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

SIFL_DEFINE_ERROR(DimensionError);
SIFL_DEFINE_ERROR(GenerationFailure);
SIFL_DEFINE_ERROR(InvalidArgs);
SIFL_DEFINE_ERROR(DomainError);
SIFL_DEFINE_ERROR(NoSolution);
SIFL_DEFINE_ERROR(ShapeMismatch);
SIFL_DEFINE_ERROR(EmptyDataset);
SIFL_DEFINE_ERROR(EmptyBatch);
SIFL_DEFINE_ERROR(IoError);
SIFL_DEFINE_ERROR(TooManyClients);
SIFL_DEFINE_ERROR(KeyMismatch);
SIFL_DEFINE_ERROR(ProtocolOrderError);
SIFL_DEFINE_ERROR(MissingClient);
SIFL_DEFINE_ERROR(DuplicateClient);
SIFL_DEFINE_ERROR(ConfigError);
SIFL_DEFINE_ERROR(FormatError);
SIFL_DEFINE_ERROR(TransportError);

#undef SIFL_DEFINE_ERROR

// Parse failures carry the 1-based line they occurred on.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sifl

#endif  // SIFL_CORE_ERRORS_HPP_
