#pragma once

#include <stdexcept>
#include <string>

namespace trivortex {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two vortex positions coincide; carries the offending pair (0-based).
struct SingularConfigurationError : Error {
    int i, j;
    SingularConfigurationError(int i_, int j_, const std::string& what)
        : Error(what), i(i_), j(j_) {}
};

/// A reduced state sits on (or past) a collision locus of the reduced
/// Hamiltonian; carries the vortex pair whose log argument vanished.
struct SingularityError : Error {
    int i, j;
    SingularityError(int i_, int j_, const std::string& what)
        : Error(what), i(i_), j(j_) {}
};

/// The Jacobi chain needs gamma1 != 0; callers with gamma1 == 0 belong in
/// the zero-circulation reduction instead.
struct ZeroTotalCirculationError : Error {
    using Error::Error;
};

struct InvalidStateError : Error {
    using Error::Error;
};

struct IntegrationError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace trivortex
