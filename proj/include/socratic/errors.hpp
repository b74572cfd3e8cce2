/*
 * Copyright 2026 The socratic-debug Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace socratic {

// Root of every exception the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A question node was placed somewhere its kind does not allow.
class PlacementError : public Error {
public:
    using Error::Error;
};

// ProblemBundle or dataset record violates its invariants.
class InvalidProblemError : public Error {
public:
    using Error::Error;
};

// start_session could not estimate a usable state space.
class SessionSetupError : public Error {
public:
    using Error::Error;
};

// Operation is not allowed in the session's current status.
class InvalidStateError : public Error {
public:
    using Error::Error;
};

class CorruptTranscriptError : public Error {
public:
    using Error::Error;
};

// Missing slot, unknown template, malformed template file.
class TemplateError : public Error {
public:
    using Error::Error;
};

// Structured input failed validation. path locates the offending field,
// e.g. "problems[3].correct_code".
class SchemaError : public Error {
public:
    SchemaError(std::string path, const std::string& what)
        : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace socratic
