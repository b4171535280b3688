#ifndef MSURF_ERRORS_HPP
#define MSURF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace msurf {

// Domain errors carry a stable machine-readable code; the CLI lifts them
// into {"error":{"code":...,"message":...}} objects with exit status 1.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void raise(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

} // namespace msurf

#endif
