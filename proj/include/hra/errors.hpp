#pragma once

#include <stdexcept>
#include <string>

namespace hra {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedLength : Error {
    explicit UnsupportedLength(const std::string& what) : Error(what) {}
};

struct NoExactSupport : Error {
    explicit NoExactSupport(const std::string& what) : Error(what) {}
};

struct EnumerationTooLarge : Error {
    explicit EnumerationTooLarge(const std::string& what) : Error(what) {}
};

struct TooLarge : Error {
    explicit TooLarge(const std::string& what) : Error(what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

struct MemberInput : Error {
    explicit MemberInput(const std::string& what) : Error(what) {}
};

struct GridMismatch : Error {
    explicit GridMismatch(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace hra
