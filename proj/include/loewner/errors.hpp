#pragma once
#include <stdexcept>

namespace loewner {

// Bad or inconsistent input (maps to process exit code 2).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iteration failed to reach its tolerance (exit code 3).
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// NaN or infinity appeared in a result (exit code 4).
struct nonfinite_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}
