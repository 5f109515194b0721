#pragma once

#include <mutex>

#include "counterquill/error.hpp"
#include "counterquill/service.hpp"

namespace counterquill {

// Marks a session busy for the length of a gateway call. Construct and
// release while holding the exclusive lock; the destructor takes the lock
// itself when an exception skipped the release.
class Service::BusyGuard {
public:
    BusyGuard(Service& service, std::string session_id)
        : service_(service), session_id_(std::move(session_id)) {
        if (!service_.busy_.insert(session_id_).second) {
            fail(ErrorCode::busy, "session " + session_id_ + " has a request in flight");
        }
    }
    BusyGuard(const BusyGuard&) = delete;
    BusyGuard& operator=(const BusyGuard&) = delete;

    void release_locked() {
        if (held_) service_.busy_.erase(session_id_);
        held_ = false;
    }

    ~BusyGuard() {
        if (!held_) return;
        std::unique_lock lock(service_.mu_);
        service_.busy_.erase(session_id_);
    }

private:
    Service& service_;
    std::string session_id_;
    bool held_ = true;
};

}  // namespace counterquill
