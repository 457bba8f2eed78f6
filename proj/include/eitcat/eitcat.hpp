// Copyright 2026 The eitcat Authors
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

#pragma once

#include "eitcat/channel.hpp"
#include "eitcat/coherent.hpp"
#include "eitcat/config.hpp"
#include "eitcat/error.hpp"
#include "eitcat/fock.hpp"
#include "eitcat/io.hpp"
#include "eitcat/params.hpp"
#include "eitcat/propagation.hpp"
#include "eitcat/protocol.hpp"
#include "eitcat/quadrature.hpp"
#include "eitcat/scenario.hpp"
#include "eitcat/states.hpp"
#include "eitcat/version.hpp"
