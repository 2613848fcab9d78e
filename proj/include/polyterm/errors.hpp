#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace polyterm {

/// Domain error carrying a stable machine-readable code in addition to the
/// human-readable message. The CLI maps these to structured JSON on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace polyterm
