/*
   Copyright 2026 The ckv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ckv {

/* Base class for every exception thrown by this library. */
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* Invalid input: malformed text, violated precondition, unsupported
   parameter range.  The command line maps this to exit code 2. */
class input_error : public error {
public:
    using error::error;
};

/* Text that fails the polynomial or integer grammar.  Carries the byte
   offset of the first offending character. */
class parse_error : public input_error {
public:
    parse_error(const std::string& what, std::size_t pos)
        : input_error(what + " (at position " + std::to_string(pos) + ")"),
          pos_(pos) {}

    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

/* A computation was asked to exceed its configured work bound. */
class budget_error : public input_error {
public:
    using input_error::input_error;
};

/* An internal invariant failed.  Every occurrence is a bug in this
   library or a wrong mathematical assumption; the command line maps
   it to exit code 1. */
class internal_error : public error {
public:
    using error::error;
};

inline void check_internal(bool ok, const char* what) {
    if (!ok) throw internal_error(what);
}

inline void check_input(bool ok, const std::string& what) {
    if (!ok) throw input_error(what);
}

} // namespace ckv
