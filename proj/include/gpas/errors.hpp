#pragma once

#include <stdexcept>
#include <string>

namespace gpas {

// Parameter outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A PoissonSource ran past its per-run draw budget. Usually means mu ~ 0.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Calibration search ran past its k cap, or the failure probability was
// observed to increase in k inside the searched bracket.
class SearchFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A single TPA run exceeded its step cap.
class IterationCap : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Graph too large for exact enumeration.
class SizeExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

// Phase one of the two-phase scheme exhausted its budget, i.e. ln-ratio ~ 0.
class DegenerateRatio : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gpas
