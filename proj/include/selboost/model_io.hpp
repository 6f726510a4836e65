#pragma once

#include <string>

#include "selboost/booster.hpp"

namespace selboost {

// Versioned line-oriented text model format, documented field by field in
// docs/model_format.md. Reals are printed with %.17g so values round-trip
// exactly; the final line carries an FNV-1a checksum of everything above it.

std::string serialize_model(const Ensemble& ensemble);

/// Inverse of serialize_model. Throws data_error on version mismatch,
/// truncation, checksum failure, or malformed fields.
Ensemble parse_model(const std::string& text);

void save_model(const Ensemble& ensemble, const std::string& path);

Ensemble load_model(const std::string& path);

}  // namespace selboost
