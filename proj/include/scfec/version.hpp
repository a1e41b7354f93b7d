// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace scfec {

inline constexpr const char* kToolName = "scfec-sim";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kCsvSchemaLine = "# scfec-sim csv v1";

}  // namespace scfec
