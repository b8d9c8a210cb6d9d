// Copyright (c) 2026 scalelab developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace scalelab {

inline constexpr const char* version = "0.1.0";

} // namespace scalelab
