// Copyright 2026 The entlink Authors
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

#ifndef ENTLINK_ERROR_H_
#define ENTLINK_ERROR_H_

#include <stdexcept>
#include <string>

namespace entlink {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed lexicon document.
class LexiconError : public Error {
 public:
  using Error::Error;
};

// Knowledge graph loading errors. The message names the offending JSON path,
// e.g. "packages[1].members[2]".
class KgError : public Error {
 public:
  KgError(const std::string &path, const std::string &what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

class SchemaError : public KgError {
 public:
  using KgError::KgError;
};

class DanglingReference : public KgError {
 public:
  using KgError::KgError;
};

class DuplicateId : public KgError {
 public:
  using KgError::KgError;
};

class PatternCompileError : public KgError {
 public:
  using KgError::KgError;
};

class UnknownEntity : public Error {
 public:
  explicit UnknownEntity(const std::string &id)
      : Error("unknown entity: " + id), id_(id) {}
  const std::string &id() const { return id_; }

 private:
  std::string id_;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("knowledge graph has no entities to fit") {}
};

class EmptyLinkSet : public Error {
 public:
  EmptyLinkSet() : Error("no understood entities") {}
};

class InputTooLong : public Error {
 public:
  InputTooLong(size_t length, size_t limit)
      : Error("input has " + std::to_string(length) +
              " characters, limit is " + std::to_string(limit)) {}
};

class InvalidEncoding : public Error {
 public:
  InvalidEncoding() : Error("input is not valid UTF-8") {}
};

class SinkUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace entlink

#endif  // ENTLINK_ERROR_H_
