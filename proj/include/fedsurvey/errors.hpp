#pragma once

#include <stdexcept>
#include <string>

namespace fedsurvey {

// Error taxonomy maps onto CLI exit codes: ConfigError -> 2, DataError -> 3,
// everything else derived from Error -> 4.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what) {}
};

class StatsError : public Error {
public:
    explicit StatsError(const std::string& what) : Error(what) {}
};

class ModelError : public Error {
public:
    explicit ModelError(const std::string& what) : Error(what) {}
};

class FederationError : public Error {
public:
    explicit FederationError(const std::string& what) : Error(what) {}
};

class SerializationError : public Error {
public:
    explicit SerializationError(const std::string& what) : Error(what) {}
};

}  // namespace fedsurvey
