#pragma once

#include <stdexcept>
#include <string>

namespace eqdeg {

// Bad arguments or violated preconditions (out-of-range vertex, t < k, ...).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Malformed file content. `context` names the offending location, e.g. "layers[3]".
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& message, std::string context)
        : std::runtime_error(message), context_(std::move(context)) {}

    const std::string& context() const noexcept { return context_; }

  private:
    std::string context_;
};

// An internal guarantee of an algorithm did not hold. For the colouring
// pipeline this means the supplied partition or list assignment was not what
// it claimed to be. `state` carries a dump useful for diagnosis.
class InvariantError : public std::logic_error {
  public:
    InvariantError(const std::string& message, std::string state)
        : std::logic_error(message), state_(std::move(state)) {}

    const std::string& state() const noexcept { return state_; }

  private:
    std::string state_;
};

} // namespace eqdeg
