#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strata
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Malformed input: bad file syntax, bad field, inconsistent request.
    class InputError : public Error
    {
    public:
        using Error::Error;
    };

    class ParseError : public InputError
    {
    public:
        ParseError(std::size_t line, const std::string & message) :
            InputError("line " + std::to_string(line) + ": " + message),
            _line(line)
        {
        }

        [[nodiscard]] auto line() const -> std::size_t { return _line; }

    private:
        std::size_t _line;
    };

    class NonAdmissible : public InputError
    {
    public:
        using InputError::InputError;
    };

    class NotFiniteDimensional : public InputError
    {
    public:
        using InputError::InputError;
    };

    class FieldTooSmall : public Error
    {
    public:
        using Error::Error;
    };

    /// A simple module has endomorphisms beyond the ground field.
    class NonSplit : public Error
    {
    public:
        using Error::Error;
    };

    /// A search exhausted its budget without a proof either way.
    class Inconclusive : public Error
    {
    public:
        using Error::Error;
    };

    /// A homological value needs more of a resolution than was computed.
    class Undetermined : public Error
    {
    public:
        using Error::Error;
    };

    class NonConvergent : public Error
    {
    public:
        using Error::Error;
    };

    class VerificationFailed : public Error
    {
    public:
        using Error::Error;
    };

    class NotAntiInvolution : public Error
    {
    public:
        using Error::Error;
    };

    /// A precondition of an operation does not hold for this input.
    class PreconditionFailed : public Error
    {
    public:
        using Error::Error;
    };
}
