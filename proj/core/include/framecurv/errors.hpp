#ifndef FRAMECURV_ERRORS_HPP
#define FRAMECURV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace framecurv {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax or identifier error while parsing an expression; offset is the
/// byte position in the source text where the problem was detected.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Domain error during numeric evaluation (log of non-positive value,
/// division by zero, trigonometric poles, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Frame matrix is numerically singular (|det| below the hard threshold).
class SingularFrameError : public Error {
 public:
  using Error::Error;
};

/// Nested finite differencing lost too much precision to be trusted.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (bad schema, out-of-range values, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A specialized formula was requested for inputs that violate its
/// hypotheses; carries the offending structure-function entry when the
/// violation is a nonzero tensor entry.
class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& msg)
      : Error(msg), k_(-1), i_(-1), j_(-1), value_(0.0) {}
  HypothesisError(const std::string& msg, int k, int i, int j, double value)
      : Error(msg), k_(k), i_(i), j_(j), value_(value) {}
  bool has_entry() const { return k_ >= 0; }
  int entry_k() const { return k_; }
  int entry_i() const { return i_; }
  int entry_j() const { return j_; }
  double entry_value() const { return value_; }

 private:
  int k_, i_, j_;
  double value_;
};

}  // namespace framecurv

#endif  // FRAMECURV_ERRORS_HPP
