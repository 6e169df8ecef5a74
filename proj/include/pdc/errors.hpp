// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pdc {

// Numeric values are mirrored by pdc_status in pdc.h.
enum class ErrorCode : int {
  config = 1,
  truncation = 2,
  integration = 3,
  integrity = 4,
  domain = 5,
  basis_too_small = 6,
  io = 7,
  argument = 8,
  symmetry = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define PDC_DEFINE_ERROR(Name, Code)                                        \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  };

PDC_DEFINE_ERROR(ConfigError, config)
PDC_DEFINE_ERROR(TruncationError, truncation)
PDC_DEFINE_ERROR(IntegrationError, integration)
PDC_DEFINE_ERROR(IntegrityError, integrity)
PDC_DEFINE_ERROR(DomainError, domain)
PDC_DEFINE_ERROR(BasisTooSmallError, basis_too_small)
PDC_DEFINE_ERROR(IoError, io)
PDC_DEFINE_ERROR(ArgumentError, argument)
PDC_DEFINE_ERROR(SymmetryError, symmetry)

#undef PDC_DEFINE_ERROR

// Throws the subclass that matches `code`.
[[noreturn]] inline void throw_error(ErrorCode code, const std::string& what) {
  switch (code) {
    case ErrorCode::config: throw ConfigError(what);
    case ErrorCode::truncation: throw TruncationError(what);
    case ErrorCode::integration: throw IntegrationError(what);
    case ErrorCode::integrity: throw IntegrityError(what);
    case ErrorCode::domain: throw DomainError(what);
    case ErrorCode::basis_too_small: throw BasisTooSmallError(what);
    case ErrorCode::io: throw IoError(what);
    case ErrorCode::argument: throw ArgumentError(what);
    case ErrorCode::symmetry: throw SymmetryError(what);
  }
  throw Error(code, what);
}

}  // namespace pdc
