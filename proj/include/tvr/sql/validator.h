/*
 * Copyright 2026 The tvr Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "tvr/event_log.h"
#include "tvr/plan.h"
#include "tvr/sql/ast.h"

namespace tvr::sql {

struct ValidatedQuery {
  PlanPtr plan;
  EmitSpec emit;
};

/// Resolves names against `catalog`, types every expression and computes
/// event-time propagation. Only verbatim column forwarding keeps an
/// event-time flag. Every GROUP BY over an unbounded input needs an
/// event-time key. Throws ValidationError.
ValidatedQuery validate(const Query& query, const Catalog& catalog);

}  // namespace tvr::sql
