#pragma once

#include <stdexcept>
#include <string>

namespace cusg {

  // Base of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed input: wrong dimensions, out-of-range indices.
  class StructureError : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    ParseError(int line, int column, std::string const& what)
        : Error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + what),
          _line(line),
          _column(column) {}

    int line() const noexcept {
      return _line;
    }
    int column() const noexcept {
      return _column;
    }

   private:
    int _line;
    int _column;
  };

  // An element that does not belong to the carrier it was used with.
  class CarrierError : public Error {
   public:
    using Error::Error;
  };

  // Invalid chain descriptor, or a descriptor the backend cannot take the
  // supremum of.
  class ChainError : public Error {
   public:
    using Error::Error;
  };

  class FuelError : public Error {
   public:
    using Error::Error;
  };

  // An operation was called outside its precondition.
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

}  // namespace cusg
