/*
 * Copyright 2026 The noma-jspa Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "noma/op_counter.hpp"

namespace noma {

namespace detail {
OpCounter*& active_counter() {
  thread_local OpCounter* current = nullptr;
  return current;
}
} // namespace detail

OpCountScope::OpCountScope(OpCounter& counter) : previous_(detail::active_counter()) {
  detail::active_counter() = &counter;
}

OpCountScope::~OpCountScope() { detail::active_counter() = previous_; }

std::uint64_t current_op_count() {
  const OpCounter* c = detail::active_counter();
  return c ? c->total() : 0;
}

} // namespace noma
