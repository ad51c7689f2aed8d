#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace varj {

// Every failure carries a stable machine-readable category token
// ("domain-error", "no-convergence", ...) next to the human message.
// The CLI maps categories to exit codes; tests match on them.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& message)
        : std::runtime_error(category + ": " + message), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

[[noreturn]] inline void fail(const char* category, const std::string& message) {
    throw Error(category, message);
}

}  // namespace varj
