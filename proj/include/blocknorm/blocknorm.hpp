// Copyright 2026 The blocknorm Authors.
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

#ifndef BLOCKNORM_BLOCKNORM_HPP
#define BLOCKNORM_BLOCKNORM_HPP

#include "blocknorm/blocks.hpp"
#include "blocknorm/dist.hpp"
#include "blocknorm/error.hpp"
#include "blocknorm/infer.hpp"
#include "blocknorm/mc.hpp"
#include "blocknorm/panel_csv.hpp"
#include "blocknorm/procgen.hpp"
#include "blocknorm/rng.hpp"
#include "blocknorm/series.hpp"
#include "blocknorm/stats.hpp"
#include "blocknorm/version.hpp"

#endif  // BLOCKNORM_BLOCKNORM_HPP
