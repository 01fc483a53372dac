#pragma once

namespace hyperpol {

inline constexpr const char* version = "0.1.0";
inline constexpr int config_schema_version = 1;

}  // namespace hyperpol
