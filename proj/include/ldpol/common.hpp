// Copyright 2026 The ldpol Authors
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

#ifndef LDPOL_COMMON_HPP_
#define LDPOL_COMMON_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ldpol {

using Vector = std::vector<double>;
using VecView = std::span<const double>;
using VecMut = std::span<double>;

// Round index of the synchronous protocol. Round t consumes sample xi_t and
// produces theta_{t+1}.
using Round = std::int64_t;

}  // namespace ldpol

#endif  // LDPOL_COMMON_HPP_
