#pragma once

#include <stdexcept>
#include <string>

namespace serrelab {

/// Base of every error the library raises on purpose.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that does not describe a well-formed object (bad labels, bad JSON
/// shape, malformed orientation strings, ...).
class invalid_input : public error {
 public:
  using error::error;
};

class cycle_detected : public invalid_input {
 public:
  explicit cycle_detected(const std::string& where)
      : invalid_input("cover relation has a cycle through " + where) {}
};

class redundant_cover : public invalid_input {
 public:
  redundant_cover(const std::string& lo, const std::string& hi)
      : invalid_input("redundant cover (" + lo + ", " + hi + ")"), lo_(lo), hi_(hi) {}
  const std::string& lo() const { return lo_; }
  const std::string& hi() const { return hi_; }

 private:
  std::string lo_, hi_;
};

class not_a_lattice : public invalid_input {
 public:
  not_a_lattice(const std::string& a, const std::string& b, const std::string& what)
      : invalid_input("not a lattice: " + a + " and " + b + " have no " + what), a_(a), b_(b) {}
  const std::string& a() const { return a_; }
  const std::string& b() const { return b_; }

 private:
  std::string a_, b_;
};

class guardrail_exceeded : public error {
 public:
  using error::error;
};

class lattice_mismatch : public error {
 public:
  using error::error;
};

/// Raised when a supposed complex has d o d != 0 or a differential block
/// violates the Hom-support condition.
class not_a_complex : public error {
 public:
  using error::error;
};

class max_steps_exceeded : public error {
 public:
  using error::error;
};

class period_violation : public error {
 public:
  using error::error;
};

class rotation_violation : public error {
 public:
  using error::error;
};

/// Internal consistency check failure (a claimed invariant did not hold).
class verification_failure : public error {
 public:
  using error::error;
};

}  // namespace serrelab
