#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maclab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or contract violations detected before or during setup.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an analytic evaluator.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Zero total population handed to a moment evaluation.
class DegenerateDensityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& key, const std::string& what)
      : Error(format(line, key, what)), line_(line), key_(key) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  static std::string format(std::size_t line, const std::string& key, const std::string& what) {
    std::string msg = "line " + std::to_string(line);
    if (!key.empty()) msg += " (" + key + ")";
    return msg + ": " + what;
  }

  std::size_t line_;
  std::string key_;
};

// Non-finite value or non-positive density produced by a time step.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t node, long step, double rho)
      : Error("divergence at node " + std::to_string(node) + ", step " + std::to_string(step) +
              " (rho=" + std::to_string(rho) + ")"),
        node_(node),
        step_(step),
        rho_(rho) {}

  std::size_t node() const noexcept { return node_; }
  long step() const noexcept { return step_; }
  double rho() const noexcept { return rho_; }

 private:
  std::size_t node_;
  long step_;
  double rho_;
};

}  // namespace maclab
