#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace counterquill {

// Every failure the service can surface. The HTTP layer maps each code to a
// distinct status and a stable wire name.
enum class ErrorCode {
    invalid_argument,
    out_of_range,
    not_found,
    stage,
    busy,
    conflict,
    not_pending,
    provenance,
    duplicate,
    unparseable,
    provider_error,
    timeout,
    exhausted_retries,
    insufficient_corpus,
    corrupt_log,
    config,
    unauthorized,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Raised by the gateway when the provider answered with a failure status or an
// unusable body.
class ProviderError : public Error {
public:
    ProviderError(int status, std::string body)
        : Error(ErrorCode::provider_error,
                "provider error (status " + std::to_string(status) + ")"),
          status_(status), body_(std::move(body)) {}

    int status() const noexcept { return status_; }
    const std::string& body() const noexcept { return body_; }

private:
    int status_;
    std::string body_;
};

// Raised by event-log replay; offset is the byte position of the bad record.
class CorruptLogError : public Error {
public:
    CorruptLogError(std::size_t line, std::size_t offset, const std::string& why)
        : Error(ErrorCode::corrupt_log,
                "corrupt event log at line " + std::to_string(line) +
                    " (byte offset " + std::to_string(offset) + "): " + why),
          line_(line), offset_(offset) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t line_;
    std::size_t offset_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace counterquill
