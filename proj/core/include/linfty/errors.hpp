#pragma once

#include <stdexcept>
#include <string>

namespace linfty {

// Base for every failure that originates in the algebra (as opposed to
// malformed command lines). The CLI maps these to exit status 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public DomainError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : DomainError(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

class ArityError : public DomainError {
public:
    using DomainError::DomainError;
};

class DivisionByZero : public DomainError {
public:
    DivisionByZero() : DomainError("division by zero") {}
};

class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class ParameterMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

class NotACodifferential : public DomainError {
public:
    using DomainError::DomainError;
};

class SymbolicCoefficients : public DomainError {
public:
    using DomainError::DomainError;
};

class CutoffError : public DomainError {
public:
    using DomainError::DomainError;
};

class SingularAutomorphism : public DomainError {
public:
    using DomainError::DomainError;
};

class RelationViolated : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace linfty
