#pragma once

#include <stdexcept>
#include <string>

namespace reflectra {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct ParityError : Error { using Error::Error; };
struct SupportError : Error { using Error::Error; };
struct TruncationError : Error { using Error::Error; };
struct UnsupportedFamilyError : Error { using Error::Error; };
struct ConsistencyError : Error { using Error::Error; };
struct SingularityError : Error { using Error::Error; };

struct AccuracyError : Error {
    AccuracyError(const std::string& what, double achieved)
        : Error(what), achieved(achieved) {}
    double achieved;
};

}  // namespace reflectra
