#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace symindiv {

using Index = std::uint64_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments, ill-formed terms, violated preconditions.
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what, std::string path = {})
        : Error(path.empty() ? what : what + " (at " + path + ")"), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Term text that does not match the grammar. `offset` is a byte offset into the input.
class ParseError : public InvalidInput {
public:
    ParseError(std::size_t offset, const std::string& expected)
        : InvalidInput("parse error at byte " + std::to_string(offset) + ": expected " + expected),
          offset_(offset), expected_(expected) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

class SignatureMismatch : public Error {
public:
    using Error::Error;
};

class NotAnEncoding : public Error {
public:
    using Error::Error;
};

/// A budgeted search ran out before finding what it was asked for. This is an
/// outcome, not a failure: nothing is certified about indices past the budget.
struct Exhausted {
    std::string stage;
    std::optional<Index> stuck_index;
    std::string detail;
    std::vector<std::pair<Index, Index>> deepest;
};

template <class T>
using Outcome = std::variant<T, Exhausted>;

template <class T>
bool found(const Outcome<T>& o) {
    return std::holds_alternative<T>(o);
}

template <class T>
const T& value(const Outcome<T>& o) {
    return std::get<T>(o);
}

template <class T>
const Exhausted& exhausted(const Outcome<T>& o) {
    return std::get<Exhausted>(o);
}

}  // namespace symindiv
