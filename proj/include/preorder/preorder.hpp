// Copyright 2026 The preorder Authors
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

#include "preorder/core.hpp"
#include "preorder/dicut.hpp"
#include "preorder/error.hpp"
#include "preorder/exact.hpp"
#include "preorder/extended_real.hpp"
#include "preorder/gaf.hpp"
#include "preorder/gai.hpp"
#include "preorder/gm.hpp"
#include "preorder/io.hpp"
#include "preorder/relax.hpp"
#include "preorder/simplex.hpp"
