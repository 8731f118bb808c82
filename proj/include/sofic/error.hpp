#pragma once

#include <stdexcept>
#include <string>

namespace sofic {

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Objects from different groups, malformed tables, non-group structures.
class StructuralError : public Error
{
  public:
    using Error::Error;
};

// A precondition on an argument does not hold.
class ArgumentError : public Error
{
  public:
    using Error::Error;
};

// Free-group word longer than the sofic map's evaluation cap.
class CapExceededError : public ArgumentError
{
  public:
    using ArgumentError::ArgumentError;
};

class NumericalError : public Error
{
  public:
    using Error::Error;
};

class ResourceError : public Error
{
  public:
    using Error::Error;
};

class ConfigError : public Error
{
  public:
    using Error::Error;
};

} // namespace sofic
