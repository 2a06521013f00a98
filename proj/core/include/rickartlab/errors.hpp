#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rickart {

  // Base for every error the engine raises on bad input or exhausted limits.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Explicit tables or actions that violate a ring/module axiom.
  class ConstructionError : public Error {
   public:
    ConstructionError(std::string axiom, std::string const& detail)
        : Error("construction error: " + axiom + ": " + detail),
          axiom_(std::move(axiom)) {}

    std::string const& axiom() const noexcept {
      return axiom_;
    }

   private:
    std::string axiom_;
  };

  // A configured cap was exceeded. Never silently truncated.
  class CapacityError : public Error {
   public:
    CapacityError(std::string cap, std::size_t limit, std::size_t requested)
        : Error("capacity error: " + cap + " limit " + std::to_string(limit)
                + " exceeded (needed " + std::to_string(requested) + ")"),
          cap_(std::move(cap)),
          limit_(limit) {}

    std::string const& cap() const noexcept {
      return cap_;
    }
    std::size_t limit() const noexcept {
      return limit_;
    }

   private:
    std::string cap_;
    std::size_t limit_;
  };

  class OverflowError : public Error {
   public:
    using Error::Error;
  };

}  // namespace rickart
