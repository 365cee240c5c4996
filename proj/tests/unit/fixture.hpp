#pragma once

#include <string>

#include "sba/quiver_core/bq_format.hpp"

inline std::string fixture_path(const std::string& name) { return std::string(SBA_FIXTURE_DIR) + "/" + name; }

inline sba::quiver_core::BoundQuiver load_bq(const std::string& name) {
    return sba::quiver_core::read_bq_file(fixture_path(name));
}
