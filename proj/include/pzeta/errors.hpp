#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pzeta {

// Evaluation requested at (or numerically indistinguishable from) a pole.
class singularity_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed record in an input stream; line numbers are 1-based.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Ordinate sequence not strictly increasing.
class monotonicity_error : public std::runtime_error {
 public:
  monotonicity_error(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input stream contained no ordinates at all.
class empty_table_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too few Monte Carlo samples for the requested statistic.
class insufficient_samples_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent generator images when building a character table.
class construction_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pzeta
