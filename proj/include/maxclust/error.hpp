#ifndef MAXCLUST_ERROR_HPP_
#define MAXCLUST_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace maxclust {

// Base class for every error raised by the library. The CLI maps these to
// exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph/word text, unknown labels, out-of-range family parameters.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A precondition on the input was violated (word not reduced, not a braid
// cluster, element not maximally clustered, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A closure or enumeration hit its configured node cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// No applicable braid move at the requested position.
class NoMoveError : public Error {
 public:
  using Error::Error;
};

// The word does not parse as a contracted expression; callers should run
// find_contracted_expression first.
class NotContracted : public Error {
 public:
  using Error::Error;
};

// The graph lies outside the class where the contraction operators are
// defined (some component is not a subgraph of a type E graph).
class OutOfScope : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Seeing one of these means a bug or a
// counterexample to a structural claim the library relies on.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace maxclust

#endif  // MAXCLUST_ERROR_HPP_
