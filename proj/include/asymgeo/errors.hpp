#pragma once

#include <stdexcept>
#include <string>

namespace asymgeo {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Input and format problems. The CLI maps these to exit code 2.
class InputError : public Error
{
  public:
    using Error::Error;
};

class ParseError : public InputError
{
  public:
    using InputError::InputError;
};

class NegativeWeight : public InputError
{
  public:
    using InputError::InputError;
};

class UnknownLabel : public InputError
{
  public:
    using InputError::InputError;
};

// Numerical and domain problems. The CLI maps these to exit code 3.
class DomainError : public Error
{
  public:
    using Error::Error;
};

class SpaceMismatch : public DomainError
{
  public:
    using DomainError::DomainError;
};

class DimensionMismatch : public DomainError
{
  public:
    using DomainError::DomainError;
};

class ZeroMass : public DomainError
{
  public:
    using DomainError::DomainError;
};

class NotFinite : public DomainError
{
  public:
    using DomainError::DomainError;
};

class BracketFailure : public DomainError
{
  public:
    using DomainError::DomainError;
};

class LpIterationLimit : public DomainError
{
  public:
    using DomainError::DomainError;
};

class MarginalMismatch : public DomainError
{
  public:
    using DomainError::DomainError;
};

class SizeLimitExceeded : public DomainError
{
  public:
    using DomainError::DomainError;
};

} // namespace asymgeo
