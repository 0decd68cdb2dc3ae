#ifndef MZQFI_ERRORS_HPP
#define MZQFI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mzqfi {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An input parameter is outside the domain of the requested operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// An analytic formula that assumes a separable (product) input state was
/// called with a non-separable moment bundle.
class SeparabilityError : public Error {
public:
    explicit SeparabilityError(const std::string& msg) : Error(msg) {}
};

/// The Fisher matrix is singular; the requested phase is not identifiable.
class SingularFisherError : public Error {
public:
    explicit SingularFisherError(const std::string& msg) : Error(msg) {}
};

/// A finite-sum evaluation would exceed the numeric range of double.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

/// A truncated Fock-space construction left too much probability beyond the
/// cutoff.  Carries the smallest cutoff estimated to satisfy the tolerance
/// (0 when no cutoff within the cap suffices).
class TruncationError : public Error {
public:
    TruncationError(const std::string& msg, int suggested)
        : Error(msg), suggested_cutoff(suggested) {}
    int suggested_cutoff;
};

} // namespace mzqfi

#endif
