#ifndef PEG_ERRORS_HPP
#define PEG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace peg {

// Base class for all domain errors raised by the library.
class PegError : public std::runtime_error {
public:
    explicit PegError(const std::string& msg) : std::runtime_error(msg) {}
};

// A feature change whose precondition does not hold (add of a present
// feature, remove of an absent one).
class InapplicableChangeError : public PegError {
public:
    explicit InapplicableChangeError(const std::string& msg) : PegError(msg) {}
};

// Explanation set exceeds the configured subset-lattice limit.
class LatticeTooLargeError : public PegError {
public:
    explicit LatticeTooLargeError(const std::string& msg) : PegError(msg) {}
};

// A trace step is not enabled in the state it is taken from.
class InvalidTraceError : public PegError {
public:
    explicit InvalidTraceError(const std::string& msg) : PegError(msg) {}
};

// A change has no grid coordinates in the scenario at hand.
class UnknownContingencyError : public PegError {
public:
    explicit UnknownContingencyError(const std::string& msg) : PegError(msg) {}
};

// Rejection sampling hit the attempt cap without a valid scenario.
class GenerationExhaustedError : public PegError {
public:
    explicit GenerationExhaustedError(const std::string& msg) : PegError(msg) {}
};

// The robot maze of a scenario has no start-to-goal path.
class UnsolvableScenarioError : public PegError {
public:
    explicit UnsolvableScenarioError(const std::string& msg) : PegError(msg) {}
};

// Even the full delta is not a complete explanation; signals an
// input-validation bug since Def.-1 problems always admit one.
class NoCompleteExplanationError : public PegError {
public:
    explicit NoCompleteExplanationError(const std::string& msg) : PegError(msg) {}
};

// Training log-likelihood decreased for too many consecutive iterations.
class DivergedError : public PegError {
public:
    explicit DivergedError(const std::string& msg) : PegError(msg) {}
};

// Weight and feature vectors of different lengths.
class LengthMismatchError : public PegError {
public:
    explicit LengthMismatchError(const std::string& msg) : PegError(msg) {}
};

// Malformed input file (model, scenario, trace, weights, ordering).
class FormatError : public PegError {
public:
    explicit FormatError(const std::string& msg) : PegError(msg) {}
};

}  // namespace peg

#endif
