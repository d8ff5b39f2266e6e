#pragma once

#include <stdexcept>
#include <string>

namespace fracasym {

/// Error carrying a short machine-readable code, e.g. "domain" or "config".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace fracasym
