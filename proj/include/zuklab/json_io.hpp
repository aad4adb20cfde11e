#pragma once

#include <string>

#include <json.hpp>

#include "zuklab/certify.hpp"
#include "zuklab/complex.hpp"
#include "zuklab/harness.hpp"
#include "zuklab/presentation.hpp"
#include "zuklab/spectral.hpp"
#include "zuklab/zuk.hpp"

namespace zuklab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "zuklab";
inline constexpr const char* kToolVersion = "0.1.0";

/// {"alphabet": k, "positive_only": bool, "relators": [[...], ...]}
Json to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

Json to_json(const ModelParams& p);
Json to_json(const SpectralReport& r);
Json to_json(const ZukVerdict& v);
Json to_json(const ConvergenceReport& r);
Json to_json(const Certificate& c);
Json to_json(const HarnessReport& r);
Json to_json(const ReductionParams& r);

/// {"n": n, "types": [...], "cells": [[...], ...]}
Json to_json(const PartiteComplex& x);
PartiteComplex complex_from_json(const Json& j);

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

/// {"config", "tool", "payload", "payload_sha256", "generated_at"}; the hash
/// covers payload.dump() only, so the timestamp never affects it.
Json envelope(const Json& config, const Json& payload);

}  // namespace zuklab
