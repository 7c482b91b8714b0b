#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace botdna {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input that failed before any schema could be applied.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t byte_offset)
        : Error(message), byte_offset_(byte_offset) {}

    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

// Well-formed input missing or misusing a required field.
class SchemaError : public Error {
public:
    SchemaError(const std::string& message, std::string field)
        : Error(message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

}  // namespace botdna
