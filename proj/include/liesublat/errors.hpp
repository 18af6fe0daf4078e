#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace liesublat {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a precondition: mismatched moduli or dimensions, bad indices.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Mathematically undefined request, e.g. inverting zero.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured budget (subspace count, vector count, wall clock) would be exceeded.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::uint64_t estimate)
      : Error(what + " (estimate: " + std::to_string(estimate) + ")"), estimate_(estimate) {}

  std::uint64_t estimate() const noexcept { return estimate_; }

 private:
  std::uint64_t estimate_;
};

/// Structure constants violate the Jacobi identity on basis triple (i, j, k).
class JacobiError : public Error {
 public:
  JacobiError(std::size_t i, std::size_t j, std::size_t k)
      : Error("Jacobi identity fails on basis triple (" + std::to_string(i) + ", " +
              std::to_string(j) + ", " + std::to_string(k) + ")"),
        i_(i), j_(j), k_(k) {}

  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  std::size_t k() const noexcept { return k_; }

 private:
  std::size_t i_, j_, k_;
};

/// Lattice cache is unreadable, stale, or belongs to another algebra.
class CacheError : public Error {
 public:
  using Error::Error;
};

/// Input document does not match a documented schema. `location` names the
/// first offending field as a JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& location, const std::string& what)
      : Error(location + ": " + what), location_(location) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace liesublat
