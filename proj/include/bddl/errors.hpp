// Copyright 2026 The bddlkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BDDL_ERRORS_HPP
#define BDDL_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace bddl {

/// 1-based location in a source text.
struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Base class for every error this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourcePos pos, const std::string& expected)
      : Error("syntax error at " + std::to_string(pos.line) + ":" +
              std::to_string(pos.column) + ": expected " + expected),
        pos_(pos),
        expected_(expected) {}

  SourcePos pos() const { return pos_; }
  const std::string& expected() const { return expected_; }

 private:
  SourcePos pos_;
  std::string expected_;
};

/// A byte outside the s-expression alphabet.
class IllegalCharacterError : public Error {
 public:
  IllegalCharacterError(SourcePos pos, char ch)
      : Error("illegal character '" + std::string(1, ch) + "' at " +
              std::to_string(pos.line) + ":" + std::to_string(pos.column)),
        pos_(pos),
        ch_(ch) {}

  SourcePos pos() const { return pos_; }
  char character() const { return ch_; }

 private:
  SourcePos pos_;
  char ch_;
};

class SemanticError : public Error {
 public:
  SemanticError(SourcePos pos, const std::string& term, const std::string& msg)
      : Error("semantic error at " + std::to_string(pos.line) + ":" +
              std::to_string(pos.column) + ": " + msg),
        pos_(pos),
        term_(term) {}

  SourcePos pos() const { return pos_; }
  const std::string& term() const { return term_; }

 private:
  SourcePos pos_;
  std::string term_;
};

class CycleDetectedError : public Error {
 public:
  explicit CycleDetectedError(std::vector<std::string> path)
      : Error("cycle detected: " + join(path)), path_(std::move(path)) {}

  const std::vector<std::string>& path() const { return path_; }

 private:
  static std::string join(const std::vector<std::string>& path) {
    std::string out;
    for (const auto& p : path) {
      if (!out.empty()) out += " -> ";
      out += p;
    }
    return out;
  }
  std::vector<std::string> path_;
};

class DanglingReferenceError : public Error {
 public:
  explicit DanglingReferenceError(const std::string& name)
      : Error("dangling reference: " + name), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnknownSynsetError : public Error {
 public:
  explicit UnknownSynsetError(const std::string& name)
      : Error("unknown synset: " + name), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnsatisfiableError : public Error {
 public:
  explicit UnsatisfiableError(const std::string& term)
      : Error("no injective grounding exists; first blocked term: " + term),
        term_(term) {}

  const std::string& term() const { return term_; }

 private:
  std::string term_;
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& location, const std::string& msg)
      : Error("format error (" + location + "): " + msg), location_(location) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

class InvariantViolationError : public Error {
 public:
  InvariantViolationError(const std::string& id, const std::string& reason)
      : Error("invariant violation on '" + id + "': " + reason),
        id_(id),
        reason_(reason) {}

  const std::string& id() const { return id_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string id_;
  std::string reason_;
};

class UnknownObjectError : public Error {
 public:
  explicit UnknownObjectError(const std::string& id)
      : Error("unknown object: " + id), id_(id) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class UnboundTermError : public Error {
 public:
  explicit UnboundTermError(const std::string& name)
      : Error("unbound term: " + name), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnknownPredicateError : public Error {
 public:
  explicit UnknownPredicateError(const std::string& name)
      : Error("unknown predicate: " + name), name_(name) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class CyclicSupportError : public Error {
 public:
  explicit CyclicSupportError(std::vector<std::string> atoms)
      : Error("cyclic support relation among init atoms: " + join(atoms)),
        atoms_(std::move(atoms)) {}

  const std::vector<std::string>& atoms() const { return atoms_; }

 private:
  static std::string join(const std::vector<std::string>& atoms) {
    std::string out;
    for (const auto& a : atoms) {
      if (!out.empty()) out += ", ";
      out += a;
    }
    return out;
  }
  std::vector<std::string> atoms_;
};

class SamplingFailedError : public Error {
 public:
  SamplingFailedError(const std::string& atom, int attempts)
      : Error("sampling failed for " + atom + " after " +
              std::to_string(attempts) + " attempts"),
        atom_(atom),
        attempts_(attempts) {}

  const std::string& atom() const { return atom_; }
  int attempts() const { return attempts_; }

 private:
  std::string atom_;
  int attempts_;
};

class InitViolatedError : public Error {
 public:
  explicit InitViolatedError(std::vector<std::string> leaves)
      : Error("init conditions violated: " + join(leaves)),
        leaves_(std::move(leaves)) {}

  const std::vector<std::string>& leaves() const { return leaves_; }

 private:
  static std::string join(const std::vector<std::string>& leaves) {
    std::string out;
    for (const auto& l : leaves) {
      if (!out.empty()) out += "; ";
      out += l;
    }
    return out;
  }
  std::vector<std::string> leaves_;
};

class MismatchedConfigsError : public Error {
 public:
  MismatchedConfigsError() : Error("bench reports have mismatched worker lists") {}
};

class TimeoutError : public Error {
 public:
  explicit TimeoutError(double cap_seconds)
      : Error("bench run exceeded duration cap of " +
              std::to_string(cap_seconds) + " s") {}
};

}  // namespace bddl

#endif  // BDDL_ERRORS_HPP
