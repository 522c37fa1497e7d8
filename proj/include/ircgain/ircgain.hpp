// SPDX-License-Identifier: Apache-2.0
//
// ircgain - closed-form antenna-gain analysis for interference rejection combiners
// Copyright (C) 2026 ircgain contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "ircgain/comp.hpp"
#include "ircgain/example.hpp"
#include "ircgain/irc.hpp"
#include "ircgain/linalg.hpp"
#include "ircgain/matrix.hpp"
#include "ircgain/rng.hpp"
#include "ircgain/selection.hpp"
