//  Copyright 2026 The relmat Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include "relmat/algebra.hpp"
#include "relmat/base.hpp"
#include "relmat/congruences.hpp"
#include "relmat/json_io.hpp"
#include "relmat/matrix.hpp"
#include "relmat/relobjects.hpp"
#include "relmat/structures.hpp"
#include "relmat/terms.hpp"
#include "relmat/witness.hpp"
