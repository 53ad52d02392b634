// Copyright 2026 The Chronos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chronos/errors.hpp"

#include <utility>

namespace chronos {

ParseError::ParseError(std::string field_path, const std::string& message)
    : Error(field_path + ": " + message), path_(std::move(field_path)) {}

ValidationError::ValidationError(std::string field_path, const std::string& message)
    : Error(field_path + ": " + message), path_(std::move(field_path)) {}

}  // namespace chronos
