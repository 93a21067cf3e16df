// Copyright 2026 The otocsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace otocsim {

// Base of everything the library throws on bad input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedGateError : Error {
    using Error::Error;
};

struct IndexOutOfRangeError : Error {
    using Error::Error;
};

// Problem size exceeds what the dense representation supports.
struct CapacityError : Error {
    using Error::Error;
};

struct InvalidChannelError : Error {
    using Error::Error;
};

struct NotHermitianError : Error {
    using Error::Error;
};

// Invalid configuration or argument value. `field()` names the offending field when known.
struct ConfigError : Error {
    ConfigError(std::string field, const std::string &message)
        : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {
    }
    const std::string &field() const noexcept {
        return field_;
    }

   private:
    std::string field_;
};

}  // namespace otocsim
