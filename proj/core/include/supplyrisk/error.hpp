#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace supplyrisk {

// Bad or inconsistent input data: unreadable files, malformed rows, unknown ids.
// The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that parsed fine but cannot be computed on (empty regions, singular
// designs, empty networks). The CLI maps these to exit code 1.
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParseIssue {
    std::size_t line;  // 1-based, the header is line 1
    std::string message;
};

// One or more malformed rows in a CSV input. The message lists the first few
// issues with their line numbers; issues() has all of them.
class ParseError : public InputError {
public:
    ParseError(std::string path, std::vector<ParseIssue> issues)
        : InputError(describe(path, issues)), path_(std::move(path)), issues_(std::move(issues)) {}

    const std::string &path() const noexcept { return path_; }
    const std::vector<ParseIssue> &issues() const noexcept { return issues_; }
    std::size_t line() const noexcept { return issues_.empty() ? 0 : issues_.front().line; }

private:
    static std::string describe(const std::string &path, const std::vector<ParseIssue> &issues) {
        constexpr std::size_t shown = 10;
        std::string text;
        for (std::size_t k = 0; k < issues.size() && k < shown; ++k)
            text += (k ? "\n" : "") + path + ":" + std::to_string(issues[k].line) + ": " + issues[k].message;
        if (issues.size() > shown)
            text += "\n... and " + std::to_string(issues.size() - shown) + " more";
        return text;
    }

    std::string path_;
    std::vector<ParseIssue> issues_;
};

} // namespace supplyrisk
