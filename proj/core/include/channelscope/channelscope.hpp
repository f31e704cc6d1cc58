// Copyright 2026 The channelscope Authors
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

#ifndef CHANNELSCOPE_CHANNELSCOPE_HPP_
#define CHANNELSCOPE_CHANNELSCOPE_HPP_

#include "channelscope/errors.hpp"
#include "channelscope/io.hpp"
#include "channelscope/linalg.hpp"
#include "channelscope/measurement.hpp"
#include "channelscope/metrics.hpp"
#include "channelscope/optimize.hpp"
#include "channelscope/qchannel.hpp"
#include "channelscope/reconstruct.hpp"
#include "channelscope/simulate.hpp"

#endif  // CHANNELSCOPE_CHANNELSCOPE_HPP_
