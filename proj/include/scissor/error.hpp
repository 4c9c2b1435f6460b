#pragma once

#include <stdexcept>
#include <string>

namespace scissor {

/// Failure categories carried by every scissor::error.
enum class errc {
    invalid_spec,           // a LiftSpec / placement / parameter violates its invariants
    out_of_domain,          // theta or height outside the open operating interval
    unsupported_placement,  // shared-hinge rule applied where no arm exists above
    degenerate_placement,   // actuator length collapsed below the length threshold
    inconsistent_geometry,  // closed-form radicand measurably negative
    singular_range,         // a range operation hit a singular sample
    stationary_length,      // finite difference saw zero actuator-length change
    undefined_residual,     // energy residual has a zero denominator (L_E = 0)
    infeasible_seed,        // refine() given an infeasible starting placement
    bad_config,             // config document failed to parse or validate
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
    if (!ok) raise(code, what);
}

}  // namespace scissor
