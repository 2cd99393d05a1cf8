#pragma once

#include <stdexcept>
#include <string>

namespace eqcheb {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A truncated series cannot deliver the coefficients asked for.
class DepthExhausted : public Error {
public:
    DepthExhausted(int required, int available)
        : Error("series depth exhausted: need " + std::to_string(required) + ", have " +
                std::to_string(available)),
          required_(required), available_(available) {}
    int required() const { return required_; }
    int available() const { return available_; }

private:
    int required_;
    int available_;
};

class NotMonic : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

}  // namespace eqcheb
