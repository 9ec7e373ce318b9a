// solab: error taxonomy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace solab {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside a field/metric domain (or r = 0 without the origin-limit flag).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// The coefficient 1/r - F'/F of the potential solve vanishes inside the domain.
class SingularCoefficient : public Error {
 public:
  SingularCoefficient(double r_star, const std::string& what)
      : Error(what), r_star_(r_star) {}
  double r_star() const { return r_star_; }

 private:
  double r_star_;
};

// Richardson-controlled quadrature failed to reach its tolerance.
class QuadratureFailure : public Error {
 public:
  explicit QuadratureFailure(const std::string& what) : Error(what) {}
};

class UnknownName : public Error {
 public:
  explicit UnknownName(const std::string& what) : Error(what) {}
};

class ParamError : public Error {
 public:
  explicit ParamError(const std::string& what) : Error(what) {}
};

// Diffeomorphism flow left the metric domain before the requested time.
class BlowUp : public Error {
 public:
  explicit BlowUp(const std::string& what) : Error(what) {}
};

// Root-finding for the inverse diffeomorphism could not bracket/refine.
class InverseFlowFailure : public Error {
 public:
  explicit InverseFlowFailure(const std::string& what) : Error(what) {}
};

class InsufficientSamples : public Error {
 public:
  explicit InsufficientSamples(const std::string& what) : Error(what) {}
};

class NoRoot : public Error {
 public:
  explicit NoRoot(const std::string& what) : Error(what) {}
};

// Config-file syntax error; line is 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Config semantic error; names the offending key.
class ValidationError : public Error {
 public:
  ValidationError(std::string key, const std::string& what)
      : Error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace solab
