#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdomain {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One violated axiom together with a concrete witness.
struct Violation {
  std::string kind;
  std::string witness;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(render(violations)), violations_(std::move(violations)) {}
  ValidationError(std::string kind, std::string witness)
      : ValidationError(std::vector<Violation>{{std::move(kind), std::move(witness)}}) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }
  const std::string& kind() const noexcept { return violations_.front().kind; }
  bool has(std::string_view kind) const {
    for (const auto& v : violations_)
      if (v.kind == kind) return true;
    return false;
  }

 private:
  static std::string render(const std::vector<Violation>& vs) {
    std::string out;
    for (const auto& v : vs) {
      if (!out.empty()) out += "; ";
      out += v.kind + "(" + v.witness + ")";
    }
    return out;
  }

  std::vector<Violation> violations_;
};

class TypeMismatch : public Error {
 public:
  explicit TypeMismatch(const std::string& what) : Error("TypeMismatch: " + what) {}
};

class ForeignElement : public Error {
 public:
  explicit ForeignElement(const std::string& what) : Error("ForeignElement: " + what) {}
};

/// An exhaustive search would exceed its configured bound.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string what_cap, std::size_t cap)
      : Error(what_cap + "(" + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class EnumerationCapExceeded : public CapExceeded {
 public:
  explicit EnumerationCapExceeded(std::size_t cap) : CapExceeded("EnumerationCapExceeded", cap) {}
};

class SubsetSearchCapExceeded : public CapExceeded {
 public:
  explicit SubsetSearchCapExceeded(std::size_t cap) : CapExceeded("SubsetSearchCapExceeded", cap) {}
};

class PreconditionFailed : public Error {
 public:
  explicit PreconditionFailed(const std::string& what) : Error("PreconditionFailed: " + what) {}
};

/// Two independent characterizations of the same property disagreed.
class InternalInconsistency : public Error {
 public:
  explicit InternalInconsistency(const std::string& what) : Error("InternalInconsistency: " + what) {}
};

class NotDivisible : public Error {
 public:
  explicit NotDivisible(const std::string& what) : Error("NotDivisible: " + what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("ParseError: " + what) {}
};

}  // namespace qdomain
