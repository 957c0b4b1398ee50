/*
   Copyright 2026 The mvop Authors

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

#ifndef MVOP_MVOP_HPP
#define MVOP_MVOP_HPP

#include "errors.hpp"
#include "family.hpp"
#include "io.hpp"
#include "limits.hpp"
#include "matrix.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "scalar_families.hpp"
#include "verify.hpp"

#endif  // MVOP_MVOP_HPP
