#ifndef DICOLA_ERRORS_HPP
#define DICOLA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dicola {

/// Bad caller input: unknown vertex, malformed file, out-of-range parameter.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A precondition between two internal components was violated.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Ill-conditioned correlation submatrix in a partial-correlation test.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fisher-Z needs m - |z| - 3 > 0.
class SampleSizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Orientation rules tried to overwrite a non-circle mark with a different one.
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TimeoutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dicola

#endif  // DICOLA_ERRORS_HPP
