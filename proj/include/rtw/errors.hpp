#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace rtw {

// Malformed arguments: unknown vertex ids, non-edges, mismatched universes.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A vertex partition that is not a contractor (overlapping, uncovered, or
// disconnected parts).
class ContractorError : public InputError {
 public:
  using InputError::InputError;
};

// Malformed text input.  line() is 1-based, 0 when no line applies.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Operation not permitted in the current object state.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal consistency check failed.  Indicates a bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Refusal to run an exhaustive routine above its size cap.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public std::runtime_error {
 public:
  TimeoutError() : std::runtime_error("deadline exceeded") {}
};

// Cooperative cancellation.  A deadline installed with ScopedDeadline is
// polled by long-running loops through check_deadline().
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(std::chrono::duration<double> budget)
      : until_(Clock::now() + std::chrono::duration_cast<Clock::duration>(budget)) {}

  bool expired() const { return until_ && Clock::now() >= *until_; }

 private:
  std::optional<Clock::time_point> until_;
};

namespace detail {
inline const Deadline*& current_deadline() {
  thread_local const Deadline* d = nullptr;
  return d;
}
inline std::size_t& deadline_poll_counter() {
  thread_local std::size_t c = 0;
  return c;
}
}  // namespace detail

class ScopedDeadline {
 public:
  explicit ScopedDeadline(const Deadline& d) : previous_(detail::current_deadline()) {
    detail::current_deadline() = &d;
  }
  ~ScopedDeadline() { detail::current_deadline() = previous_; }
  ScopedDeadline(const ScopedDeadline&) = delete;
  ScopedDeadline& operator=(const ScopedDeadline&) = delete;

 private:
  const Deadline* previous_;
};

// Throws TimeoutError once the installed deadline has passed.  The clock is
// read on every 64th call.
inline void check_deadline() {
  const Deadline* d = detail::current_deadline();
  if (!d) return;
  if ((++detail::deadline_poll_counter() & 63U) != 0) return;
  if (d->expired()) throw TimeoutError();
}

}  // namespace rtw
