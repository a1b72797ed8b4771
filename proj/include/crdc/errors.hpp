#pragma once

#include <stdexcept>
#include <string>

namespace crdc {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct KindMismatch : Error {
  using Error::Error;
};

struct DimMismatch : Error {
  using Error::Error;
};

struct OverflowError : Error {
  using Error::Error;
};

// ill-typed term; `path` locates the offending subterm, e.g. "comp.inner.pair[1]"
struct TypeError : Error {
  std::string path;
  TypeError(const std::string& msg, std::string p = "")
      : Error(p.empty() ? msg : msg + " (at " + p + ")"), path(std::move(p)) {}
};

// constructor not allowed under the active domain tag, or scalar kind mismatch
struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " at line " + std::to_string(line_) + ", col " + std::to_string(col_)),
        line(line_),
        col(col_) {}
};

struct EvalError : Error {
  using Error::Error;
};

struct DivergenceError : Error {
  long iteration;
  DivergenceError(const std::string& msg, long iter)
      : Error(msg + " at iteration " + std::to_string(iter)), iteration(iter) {}
};

}  // namespace crdc
