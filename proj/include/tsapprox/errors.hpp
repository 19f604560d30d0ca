// Copyright 2026 The tsapprox Authors.
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsapprox {

// Base of every error thrown by the library. code() is a stable
// machine-readable token used by the CLI on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& m) : Error("domain", m) {}
};

class DegenerateBasisError : public Error {
 public:
  explicit DegenerateBasisError(const std::string& m) : Error("degenerate_basis", m) {}
};

class FitError : public Error {
 public:
  explicit FitError(const std::string& m) : Error("fit", m) {}
};

class UnsupportedOperation : public Error {
 public:
  explicit UnsupportedOperation(const std::string& m) : Error("unsupported", m) {}
};

class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& m) : Error("contract", m) {}
};

class IngestError : public Error {
 public:
  IngestError(const std::string& m, std::size_t line)
      : Error("ingest", m), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class LoadError : public Error {
 public:
  LoadError(const std::string& m, std::size_t record)
      : Error("load", m), record_(record) {}
  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& m, std::size_t offset)
      : Error("parse", m + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class EvalError : public Error {
 public:
  explicit EvalError(const std::string& m) : Error("eval", m) {}
};

// Raised when a division or square root would need an interval that
// straddles a singularity; no finite guarantee exists.
class UnboundedGuarantee : public Error {
 public:
  explicit UnboundedGuarantee(const std::string& m) : Error("unbounded_guarantee", m) {}
};

}  // namespace tsapprox
