#pragma once

#include <stdexcept>
#include <string>

namespace strop {

/// Base of every domain error raised by the library.  The CLI maps these to
/// exit code 1; InputFormatError maps to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define STROP_DEFINE_ERROR(Name)                                      \
    class Name : public Error {                                       \
    public:                                                           \
        explicit Name(const std::string& what) : Error(what) {}       \
        const char* kind() const noexcept override { return #Name; }  \
    };

STROP_DEFINE_ERROR(StructureError)
STROP_DEFINE_ERROR(SignCocycleError)
STROP_DEFINE_ERROR(NotManifoldError)
STROP_DEFINE_ERROR(DegreeError)
STROP_DEFINE_ERROR(NotTransverseError)
STROP_DEFINE_ERROR(PerturbationFailure)
STROP_DEFINE_ERROR(NotACycleError)
STROP_DEFINE_ERROR(MissingData)
STROP_DEFINE_ERROR(ExtensionAmbiguity)

#undef STROP_DEFINE_ERROR

/// Malformed input files or command lines.  Not a subclass of Error so that
/// callers can tell format problems apart from mathematical ones.
class InputFormatError : public std::runtime_error {
public:
    explicit InputFormatError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace strop
