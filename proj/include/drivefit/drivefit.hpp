// Copyright 2026 The DriveFit Authors
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

#ifndef DRIVEFIT__DRIVEFIT_HPP_
#define DRIVEFIT__DRIVEFIT_HPP_

// Everything except the HTTP transport (drivefit/http_server.hpp).
#include "drivefit/comfort.hpp"
#include "drivefit/comparison.hpp"
#include "drivefit/config.hpp"
#include "drivefit/error.hpp"
#include "drivefit/fuel.hpp"
#include "drivefit/json_codec.hpp"
#include "drivefit/pipeline.hpp"
#include "drivefit/report.hpp"
#include "drivefit/ride_summary.hpp"
#include "drivefit/safety.hpp"
#include "drivefit/service.hpp"
#include "drivefit/signal_ingest.hpp"
#include "drivefit/trip_analysis.hpp"
#include "drivefit/trip_store.hpp"

#endif  // DRIVEFIT__DRIVEFIT_HPP_
