#pragma once

#include <stdexcept>
#include <string>

namespace twofluid {

/// Error taxonomy shared by all modules. The CLI maps each class to a
/// distinct process exit code so CI can tell input mistakes from
/// convergence problems and from genuine claim violations.
class error : public std::runtime_error {
public:
    error(std::string msg, int code) : std::runtime_error(std::move(msg)), code_(code) {}
    int exit_code() const noexcept { return code_; }

private:
    int code_;
};

struct invalid_input : error {
    explicit invalid_input(const std::string& msg) : error(msg, 2) {}
};

struct no_convergence : error {
    explicit no_convergence(const std::string& msg) : error(msg, 3) {}
};

/// A numerically checked claim failed (decay bound violated, fit out of
/// tolerance). Distinct from environment/runtime trouble.
struct verification_failure : error {
    explicit verification_failure(const std::string& msg) : error(msg, 4) {}
};

struct runtime_failure : error {
    explicit runtime_failure(const std::string& msg) : error(msg, 5) {}
};

} // namespace twofluid
