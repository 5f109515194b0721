#include "counterquill/error.hpp"

namespace counterquill {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::out_of_range: return "out_of_range";
        case ErrorCode::not_found: return "not_found";
        case ErrorCode::stage: return "stage";
        case ErrorCode::busy: return "busy";
        case ErrorCode::conflict: return "conflict";
        case ErrorCode::not_pending: return "not_pending";
        case ErrorCode::provenance: return "provenance";
        case ErrorCode::duplicate: return "duplicate";
        case ErrorCode::unparseable: return "unparseable";
        case ErrorCode::provider_error: return "provider_error";
        case ErrorCode::timeout: return "timeout";
        case ErrorCode::exhausted_retries: return "exhausted_retries";
        case ErrorCode::insufficient_corpus: return "insufficient_corpus";
        case ErrorCode::corrupt_log: return "corrupt_log";
        case ErrorCode::config: return "config";
        case ErrorCode::unauthorized: return "unauthorized";
    }
    return "unknown";
}

}  // namespace counterquill
