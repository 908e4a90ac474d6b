#pragma once

#include <stdexcept>
#include <string>

namespace isoperim {

enum class ErrorKind {
  Structural,      // malformed polygon or shape
  Degenerate,      // zero area, collinear hull, ambiguous partition
  Domain,          // argument outside the admissible range
  Resolution,      // discretization too coarse for the requested quantity
  Inconsistency,   // an internal identity or sign condition failed
  Unsupported,     // parameter regime the construction does not cover
  Infeasible,      // constraints cannot be met (e.g. components overlap)
  Divergence,      // an integrated trajectory left its bounding box
  InsufficientData,
  Undefined,       // objective undefined (barycentric asymmetry is zero)
  Stencil,         // finite-difference stencil left the domain of J
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace isoperim
