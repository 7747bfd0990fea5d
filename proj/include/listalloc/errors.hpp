#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace listalloc {

/// Thrown when an enumeration would exceed its configured state cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a solve runs past its wall-clock deadline.
class Timeout : public CapExceeded {
public:
    Timeout() : CapExceeded("timeout") {}
};

/// Malformed instance or witness file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

/// Counts enumerated states for one enumeration and aborts past the cap or the deadline.
class StateBudget {
public:
    StateBudget(std::uint64_t cap, Deadline deadline, std::string what)
        : cap_(cap), deadline_(deadline), what_(std::move(what)) {}

    void tick(std::uint64_t k = 1)
    {
        count_ += k;
        if (count_ > cap_)
            throw CapExceeded(what_ + ": state cap of " + std::to_string(cap_) + " exceeded");
        if (deadline_ && (count_ & 0x3ff) < k && Clock::now() > *deadline_)
            throw Timeout();
    }

    std::uint64_t count() const { return count_; }

private:
    std::uint64_t cap_;
    std::uint64_t count_ = 0;
    Deadline deadline_;
    std::string what_;
};

inline void check_deadline(const Deadline& deadline)
{
    if (deadline && Clock::now() > *deadline)
        throw Timeout();
}

} // namespace listalloc
