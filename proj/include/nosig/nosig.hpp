// Copyright 2026 The nosig Authors.
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


// Umbrella header for the core library. File I/O lives in nosig/io.hpp,
// which additionally needs json.hpp on the include path.

#ifndef NOSIG_NOSIG_HPP_
#define NOSIG_NOSIG_HPP_

#include "nosig/errors.hpp"
#include "nosig/exact_oracle.hpp"
#include "nosig/game.hpp"
#include "nosig/generators.hpp"
#include "nosig/mwum.hpp"
#include "nosig/nosignaling.hpp"
#include "nosig/scalar.hpp"
#include "nosig/simplex.hpp"
#include "nosig/tensor.hpp"

#endif  // NOSIG_NOSIG_HPP_
