// Copyright 2026 The cdplab Authors
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

#ifndef CDPLAB_CDPLAB_H_
#define CDPLAB_CDPLAB_H_

#include "cdplab/audit.h"
#include "cdplab/binomial.h"
#include "cdplab/bit_vector.h"
#include "cdplab/circuits.h"
#include "cdplab/collision.h"
#include "cdplab/distribution.h"
#include "cdplab/errors.h"
#include "cdplab/experiments.h"
#include "cdplab/graph.h"
#include "cdplab/hashing.h"
#include "cdplab/lower_bounds.h"
#include "cdplab/mechanisms.h"
#include "cdplab/obfuscation.h"
#include "cdplab/privacy.h"
#include "cdplab/proofs.h"
#include "cdplab/random.h"
#include "cdplab/randomized_response.h"
#include "cdplab/report.h"
#include "cdplab/tuning.h"

#endif  // CDPLAB_CDPLAB_H_
